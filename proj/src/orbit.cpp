#include "teichlab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/loops.hpp"

namespace teichlab {

namespace {

// ordering key a < A < b < B
int rank(int letter) {
    switch (letter) {
        case 1: return 0;
        case -1: return 1;
        case 2: return 2;
        default: return 3;
    }
}

char spell(int letter) {
    switch (letter) {
        case 1: return 'a';
        case -1: return 'A';
        case 2: return 'b';
        default: return 'B';
    }
}

// Least rotation by direct comparison; words here are short.
std::vector<int> leastRotation(const std::vector<int>& w) {
    const std::size_t n = w.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            int x = rank(w[(s + k) % n]), y = rank(w[(best + k) % n]);
            if (x != y) {
                if (x < y) best = s;
                break;
            }
        }
    }
    std::vector<int> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = w[(best + k) % n];
    return r;
}

bool lessByRank(const std::vector<int>& u, const std::vector<int>& v) {
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end(),
                                        [](int x, int y) { return rank(x) < rank(y); });
}

std::vector<int> canonicalLetters(const std::vector<int>& letters) {
    std::vector<int> c = cyclicReduce(freeReduce(letters));
    if (c.empty()) return c;
    std::vector<int> inv(c.rbegin(), c.rend());
    for (int& x : inv) x = -x;
    std::vector<int> r1 = leastRotation(c), r2 = leastRotation(inv);
    return lessByRank(r2, r1) ? r2 : r1;
}

std::string keyOf(const std::vector<int>& letters) {
    std::string s;
    for (int x : letters) s += spell(x);
    return s;
}

// Replace each letter by its image; images of inverse letters are inverted images.
std::vector<int> substitute(const std::vector<int>& w, int letter, const std::vector<int>& image) {
    std::vector<int> inv(image.rbegin(), image.rend());
    for (int& x : inv) x = -x;
    std::vector<int> out;
    for (int x : w) {
        if (x == letter)
            out.insert(out.end(), image.begin(), image.end());
        else if (x == -letter)
            out.insert(out.end(), inv.begin(), inv.end());
        else
            out.push_back(x);
    }
    return out;
}

Mat2 letterPower(const TorusRepresentation& rho, Letter l, int e) {
    const Mat2& g = l == Letter::a ? rho.a : rho.b;
    Mat2 base = e > 0 ? g : invert(g);
    std::vector<Mat2> f(static_cast<std::size_t>(std::abs(e)), base);
    return compose(f);
}

}  // namespace

OrbitSurface orbitSurfaceOf(const FNPoint& fn) {
    if (fn.interior.size() == 1 && fn.interior.count("a") && fn.boundary.size() == 1 && fn.boundary.count("d"))
        return OrbitSurface::onceHoledTorus;
    if (fn.interior.empty() && fn.boundary.size() == 3 && fn.boundary.count("x") && fn.boundary.count("y") &&
        fn.boundary.count("z"))
        return OrbitSurface::pants;
    throw InvalidArgument("orbit: only the once-holed torus (a; d) and a single pants (x, y, z) are supported");
}

PantsWord canonicalWord(const PantsWord& w) { return fromLetters(canonicalLetters(toLetters(w))); }

std::string canonicalKey(const PantsWord& w) { return keyOf(canonicalLetters(toLetters(w))); }

bool isProperPower(const PantsWord& w) {
    std::vector<int> c = cyclicReduce(freeReduce(toLetters(w)));
    const std::size_t n = c.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t k = d; k < n && periodic; ++k) periodic = c[k] == c[k - d];
        if (periodic) return true;
    }
    return false;
}

std::vector<PantsWord> mcgNeighbors(const PantsWord& w, OrbitSurface s) {
    if (s == OrbitSurface::pants) return {};
    std::vector<int> L = toLetters(w);
    std::vector<std::vector<int>> images = {
        substitute(L, 2, {2, 1}),    // T_a: b -> ba
        substitute(L, 2, {2, -1}),   // T_a^-1: b -> bA
        substitute(L, 1, {1, 2}),    // T_b: a -> ab
        substitute(L, 1, {1, -2}),   // T_b^-1: a -> aB
    };
    std::vector<std::vector<int>> canon;
    for (auto& im : images) {
        auto c = canonicalLetters(im);
        if (!c.empty()) canon.push_back(std::move(c));
    }
    std::sort(canon.begin(), canon.end(), lessByRank);
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    std::vector<PantsWord> out;
    for (auto& c : canon) out.push_back(fromLetters(c));
    return out;
}

TorusRepresentation torusRepresentation(const FNPoint& fn) {
    if (orbitSurfaceOf(fn) != OrbitSurface::onceHoledTorus)
        throw InvalidArgument("torusRepresentation: expects once-holed torus coordinates");
    fn.validateFor(onceHoledTorus());
    return {woffset(-fn.length("a")), holonomyLoop(torusDualLoop(), fn)};
}

Mat2 evaluateWord(const PantsWord& w, const TorusRepresentation& rho) {
    std::vector<Mat2> f;
    for (const auto& s : w.syllables) f.push_back(letterPower(rho, s.letter, s.exponent));
    if (f.empty()) return Mat2::identity();
    return compose(f);
}

double orbitWordLength(const PantsWord& w, const FNPoint& fn) {
    if (w.empty()) throw InvalidArgument("orbitWordLength: empty word");
    if (orbitSurfaceOf(fn) == OrbitSurface::pants) {
        LoopSpec loop = pantsWordLoop(w);
        return loopLength(loop, fn);
    }
    return traceToLength(traceSigned(evaluateWord(w, torusRepresentation(fn))));
}

std::vector<OrbitEntry> enumerateOrbitPruned(const PantsWord& seed, const FNPoint& fn, double cutoff, double margin,
                                             std::size_t maxVisited) {
    if (!(margin >= 0) || !std::isfinite(margin)) throw InvalidArgument("enumerateOrbit: margin must be >= 0");
    if (!std::isfinite(cutoff)) throw InvalidArgument("enumerateOrbit: cutoff must be finite");
    OrbitSurface surf = orbitSurfaceOf(fn);
    PantsWord start = canonicalWord(seed);
    if (start.empty()) throw InvalidArgument("enumerateOrbit: seed reduces to the trivial word");

    std::function<double(const PantsWord&)> len;
    if (surf == OrbitSurface::onceHoledTorus) {
        TorusRepresentation rho = torusRepresentation(fn);
        len = [rho](const PantsWord& w) { return traceToLength(traceSigned(evaluateWord(w, rho))); };
    } else {
        len = [fn](const PantsWord& w) { return loopLength(pantsWordLoop(w), fn); };
    }

    const double limit = cutoff + margin;
    std::unordered_map<std::string, OrbitEntry> seen;
    std::deque<std::string> queue;
    OrbitEntry first{start, len(start), 0};
    std::string k0 = canonicalKey(start);
    seen.emplace(k0, first);
    if (first.length <= limit) queue.push_back(k0);
    while (!queue.empty()) {
        std::string key = queue.front();
        queue.pop_front();
        const OrbitEntry cur = seen.at(key);
        for (const PantsWord& nb : mcgNeighbors(cur.word, surf)) {
            std::string nk = canonicalKey(nb);
            if (seen.count(nk)) continue;
            OrbitEntry e{nb, len(nb), cur.generation + 1};
            seen.emplace(nk, e);
            if (seen.size() > maxVisited)
                throw ConfigurationError("enumerateOrbit: more than " + std::to_string(maxVisited) +
                                         " classes visited; lower the cutoff or margin");
            if (e.length <= limit) queue.push_back(nk);
        }
    }
    std::vector<std::pair<std::string, OrbitEntry>> kept;
    for (auto& [k, e] : seen)
        if (e.length <= cutoff) kept.emplace_back(k, e);
    std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
        if (x.second.length != y.second.length) return x.second.length < y.second.length;
        return x.first < y.first;
    });
    std::vector<OrbitEntry> out;
    for (auto& [k, e] : kept) out.push_back(e);
    return out;
}

std::vector<OrbitEntry> enumerateOrbit(const PantsWord& seed, const FNPoint& fn, double cutoff, double margin) {
    auto a = enumerateOrbitPruned(seed, fn, cutoff, margin);
    auto b = enumerateOrbitPruned(seed, fn, cutoff, 2 * margin + 1e-9);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].word == b[i].word;
    if (!same)
        throw MarginTooSmall("enumerateOrbit: " + std::to_string(a.size()) + " classes at margin " +
                             std::to_string(margin) + " but " + std::to_string(b.size()) + " at twice the margin");
    return a;
}

long countAtMost(const std::vector<OrbitEntry>& entries, double a) {
    auto it = std::upper_bound(entries.begin(), entries.end(), a,
                               [](double v, const OrbitEntry& e) { return v < e.length; });
    return static_cast<long>(it - entries.begin());
}

std::vector<std::pair<double, long>> countingSteps(const std::vector<OrbitEntry>& entries) {
    std::vector<std::pair<double, long>> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i + 1 < entries.size() && entries[i + 1].length == entries[i].length) continue;
        out.emplace_back(entries[i].length, static_cast<long>(i + 1));
    }
    return out;
}

double countingSlope(const std::vector<OrbitEntry>& entries, double a0, double a1, int points) {
    if (!(a0 > 0 && a1 > a0) || points < 2) throw InvalidArgument("countingSlope: need 0 < a0 < a1 and points >= 2");
    std::vector<double> xs, ys;
    for (int i = 0; i < points; ++i) {
        double a = a0 + (a1 - a0) * i / (points - 1);
        long n = countAtMost(entries, a);
        if (n <= 0) throw InvalidArgument("countingSlope: N(a) = 0 inside the range");
        xs.push_back(std::log(a));
        ys.push_back(std::log(static_cast<double>(n)));
    }
    double mx = 0, my = 0;
    for (int i = 0; i < points; ++i) {
        mx += xs[static_cast<std::size_t>(i)];
        my += ys[static_cast<std::size_t>(i)];
    }
    mx /= points;
    my /= points;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < points; ++i) {
        double dx = xs[static_cast<std::size_t>(i)] - mx;
        sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace teichlab
