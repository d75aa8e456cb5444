#include "teichlab/loops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "teichlab/errors.hpp"

namespace teichlab {

int Incursion::betaSlot() const {
    switch (form) {
        case IncursionForm::sameCurveReturn:
            return beta0 >= 0 ? beta0 : (entry + 1) % 3;
        default:
            return exit;
    }
}

int Incursion::otherSlot() const { return 3 - entry - betaSlot(); }

int Incursion::exitSlot() const {
    switch (form) {
        case IncursionForm::throughDistinct: return exit;
        case IncursionForm::sameCurveReturn: return entry;
        case IncursionForm::internal: return -1;
    }
    return -1;
}

namespace {

void checkIncursion(const Incursion& inc, const SurfaceGraph& s, size_t k) {
    std::string where = "incursion " + std::to_string(k) + ": ";
    s.pantsIndex(inc.pantsId);
    if (inc.entry < 0 || inc.entry > 2) throw InvalidLoop(where + "entry slot out of range");
    if (inc.twistSign != 1 && inc.twistSign != -1) throw InvalidLoop(where + "twistSign must be +-1");
    if (!inc.word.isNormalized()) throw InvalidLoop(where + "word is not in normal form");
    int b = inc.betaSlot();
    if (b < 0 || b > 2 || b == inc.entry) throw InvalidLoop(where + "bad exit/beta0 slot");
    const auto& sy = inc.word.syllables;
    switch (inc.form) {
        case IncursionForm::throughDistinct:
            if (!sy.empty() && (sy.front().letter != Letter::b || sy.back().letter != Letter::a))
                throw InvalidLoop(where + "throughDistinct word must begin with b and end with a");
            break;
        case IncursionForm::sameCurveReturn:
            if (sy.empty() || sy.front().letter != Letter::b || sy.back().letter != Letter::b)
                throw InvalidLoop(where + "sameCurveReturn word must begin and end with b");
            break;
        case IncursionForm::internal:
            if (sy.empty()) throw InvalidLoop(where + "internal word must be nonempty");
            break;
    }
}

}  // namespace

void LoopSpec::validate() const {
    surface.validate();
    if (incursions.empty()) throw InvalidLoop("loop has no incursions");
    for (size_t k = 0; k < incursions.size(); ++k) checkIncursion(incursions[k], surface, k);
    bool anyInternal = std::any_of(incursions.begin(), incursions.end(), [](const Incursion& i) {
        return i.form == IncursionForm::internal;
    });
    if (anyInternal) {
        if (incursions.size() != 1) throw InvalidLoop("an internal incursion must be the whole loop");
        return;
    }
    for (size_t k = 0; k < incursions.size(); ++k) {
        const auto& cur = incursions[k];
        const auto& nxt = incursions[(k + 1) % incursions.size()];
        SlotRef out{surface.pantsIndex(cur.pantsId), cur.exitSlot()};
        const auto& cid = surface.pants[out.pants].slots[out.slot];
        if (!surface.curve(cid).interior)
            throw InvalidLoop("incursion " + std::to_string(k) + " leaves through boundary curve " + cid);
        SlotRef in{surface.pantsIndex(nxt.pantsId), nxt.entry};
        if (!(surface.partner(out) == in))
            throw InvalidLoop("chaining broken between incursion " + std::to_string(k) + " and " +
                              std::to_string((k + 1) % incursions.size()));
    }
}

Mat2 holonomyPants(const PantsWord& word, const PantsTrig& trig) {
    if (word.empty()) throw InvalidArgument("holonomyPants: empty word");
    Mat2 r = Mat2::identity();
    bool first = true;
    for (const auto& sy : word.syllables) {
        if (sy.exponent == 0) continue;
        Mat2 f = sy.letter == Letter::a ? matA(trig, sy.exponent) : matB(trig, sy.exponent);
        r = first ? f : r * f;
        first = false;
    }
    return r;
}

std::string crossedCurve(const Incursion& inc, const SurfaceGraph& surface) {
    int s = inc.exitSlot();
    if (s < 0) return {};
    return surface.pants[surface.pantsIndex(inc.pantsId)].slots[s];
}

// Form (i):  a(t) W a(t*) R(pi/2) a(s) R(-pi/2)
// Form (ii): a(t) W R(pi) a(t) R(pi/2) a(s) R(-pi/2)
// with s = twistSign tau + (m/2) ell of the crossed curve, and R(pi/2) a(s) R(-pi/2) = w(-s).
namespace {

PantsTrig incursionTrig(const Incursion& inc, const SurfaceGraph& surface, const FNPoint& fn) {
    const auto& P = surface.pants[surface.pantsIndex(inc.pantsId)];
    double x = fn.length(P.slots[inc.entry]);
    double y = fn.length(P.slots[inc.betaSlot()]);
    double z = fn.length(P.slots[inc.otherSlot()]);
    return solvePants(x, y, z);
}

// Nonzero syllables with equal neighbours merged, cyclically. Empty unless the result
// alternates a and b with at least two syllables.
std::vector<Syllable> alternatingCycle(const PantsWord& w) {
    std::vector<Syllable> c;
    for (const auto& sy : w.syllables) {
        if (sy.exponent == 0) continue;
        if (!c.empty() && c.back().letter == sy.letter)
            c.back().exponent += sy.exponent;
        else
            c.push_back(sy);
    }
    if (c.size() > 1 && c.front().letter == c.back().letter) {
        c.front().exponent += c.back().exponent;
        c.pop_back();
    }
    if (c.size() < 2) return {};
    for (const auto& sy : c)
        if (sy.exponent == 0) return {};
    return c;
}

double logAddExp(double a, double b) {
    if (a == -HUGE_VAL) return b;
    if (b == -HUGE_VAL) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

SignedTrace positiveProductTrace(const std::vector<Syllable>& cycle, const PantsTrig& trig) {
    std::array<double, 4> r = {0, -HUGE_VAL, -HUGE_VAL, 0};
    for (const auto& sy : cycle) {
        std::array<double, 4> f = sMatLogEntries(sy.letter, sy.exponent, trig);
        r = {logAddExp(r[0] + f[0], r[1] + f[2]), logAddExp(r[0] + f[1], r[1] + f[3]),
             logAddExp(r[2] + f[0], r[3] + f[2]), logAddExp(r[2] + f[1], r[3] + f[3])};
    }
    SignedTrace t;
    t.sign = 1;
    t.logAbs = logAddExp(r[0], r[3]);
    t.logNorm = std::max({r[0], r[1], r[2], r[3]});
    t.value = t.valueValid() ? std::exp(t.logAbs) : HUGE_VAL;
    if (t.logAbs < 20) {
        t.excess = std::expm1(r[0]) + std::expm1(r[3]);
        t.excessScale = t.value;
    }
    return t;
}

}  // namespace

Mat2 incursionMatrix(const Incursion& inc, const SurfaceGraph& surface, const FNPoint& fn) {
    const auto& P = surface.pants[surface.pantsIndex(inc.pantsId)];
    PantsTrig trig = incursionTrig(inc, surface, fn);
    if (inc.form == IncursionForm::internal) return holonomyPants(inc.word, trig);

    const std::string& c = P.slots[inc.exitSlot()];
    double s = inc.twistSign * fn.twist(c) + 0.5 * inc.m * fn.length(c);
    Mat2 r = translation(trig.t);
    if (!inc.word.empty()) r = r * holonomyPants(inc.word, trig);
    if (inc.form == IncursionForm::throughDistinct)
        r = r * translation(trig.tStar);
    else
        r = r * matW() * translation(trig.t);
    return r * woffset(-s);
}

Mat2 holonomyLoop(const LoopSpec& loop, const FNPoint& fn) {
    loop.validate();
    std::vector<Mat2> f;
    f.reserve(loop.incursions.size());
    for (const auto& inc : loop.incursions) f.push_back(incursionMatrix(inc, loop.surface, fn));
    return compose(f);
}

SignedTrace holonomyTrace(const LoopSpec& loop, const FNPoint& fn) {
    if (loop.incursions.size() == 1 && loop.incursions[0].form == IncursionForm::internal) {
        loop.validate();
        const Incursion& inc = loop.incursions[0];
        std::vector<Syllable> cycle = alternatingCycle(inc.word);
        if (!cycle.empty()) return positiveProductTrace(cycle, incursionTrig(inc, loop.surface, fn));
    }
    return traceSigned(holonomyLoop(loop, fn));
}

LoopSpec dehnTwist(const LoopSpec& loop, const std::string& curve, int power) {
    const auto& c = loop.surface.curve(curve);
    if (!c.interior) throw InvalidArgument("dehnTwist: " + curve + " is a boundary curve");
    LoopSpec r = loop;
    for (auto& inc : r.incursions)
        if (crossedCurve(inc, r.surface) == curve) inc.m += 2 * power * inc.twistSign;
    return r;
}

LoopSpec rotateIncursions(const LoopSpec& loop, int k) {
    LoopSpec r = loop;
    int n = static_cast<int>(r.incursions.size());
    if (n == 0) return r;
    k = ((k % n) + n) % n;
    std::rotate(r.incursions.begin(), r.incursions.begin() + k, r.incursions.end());
    return r;
}

SplitResult splitResolve(const PantsWord& word, int cutA, int cutB) {
    auto L = toLetters(word);
    int n = static_cast<int>(L.size());
    if (n < 2) throw InvalidArgument("splitResolve: word needs at least two letters");
    if (cutA < 0 || cutA >= n || cutB < 0 || cutB >= n || cutA == cutB)
        throw InvalidArgument("splitResolve: degenerate cut positions");
    auto arc = [&](int from, int to) {
        std::vector<int> out;
        for (int i = from; i != to; i = (i + 1) % n) out.push_back(L[i]);
        return out;
    };
    auto u = arc(cutA, cutB), v = arc(cutB, cutA);
    std::vector<int> nv;
    for (auto it = v.rbegin(); it != v.rend(); ++it) nv.push_back(-*it);
    std::vector<int> ns = u;
    ns.insert(ns.end(), nv.begin(), nv.end());
    return {fromLetters(cyclicReduce(u)), fromLetters(cyclicReduce(v)), fromLetters(cyclicReduce(ns))};
}

const char* signName(ResolutionSign s) {
    switch (s) {
        case ResolutionSign::plus: return "plus";
        case ResolutionSign::minus: return "minus";
        case ResolutionSign::reversed: return "reversed";
    }
    return "?";
}

namespace {

// Relative residual of sum s_i exp(l_i).
double logSumResidual(const int* s, const double* l, int n) {
    double M = -HUGE_VAL;
    for (int i = 0; i < n; ++i) M = std::max(M, l[i]);
    if (!std::isfinite(M)) return 0;
    double num = 0, den = 0;
    for (int i = 0; i < n; ++i) {
        double e = std::exp(l[i] - M);
        num += s[i] * e;
        den += e;
    }
    return std::fabs(num) / den;
}

}  // namespace

ResolutionReport checkResolution(const PantsWord& word, int cutA, int cutB, const PantsTrig& trig) {
    ResolutionReport rep;
    rep.split = splitResolve(word, cutA, cutB);
    const PantsWord* ws[4] = {&word, &rep.split.u, &rep.split.v, &rep.split.nonSep};
    for (int i = 0; i < 4; ++i) {
        PantsWord w = cyclicReduce(*ws[i]);
        if (w.empty()) {
            rep.hyperbolic = false;
            rep.logTrace[i] = std::log(2.0);
            continue;
        }
        SignedTrace t = traceSigned(holonomyPants(w, trig));
        rep.logTrace[i] = t.logAbs;
        if (t.sign == 0 || t.logAbs <= std::log(2.0) + 1e-12) rep.hyperbolic = false;
    }
    const double* lt = rep.logTrace;
    double lp = lt[1] + lt[2];
    {
        int s[3] = {1, -1, -1};
        double l[3] = {lt[0], lp, lt[3]};
        rep.residuals[0] = logSumResidual(s, l, 3);
    }
    {
        int s[3] = {1, -1, 1};
        double l[3] = {lt[0], lp, lt[3]};
        rep.residuals[1] = logSumResidual(s, l, 3);
    }
    {
        int s[3] = {1, -1, -1};
        double l[3] = {lt[3], lp, lt[0]};
        rep.residuals[2] = logSumResidual(s, l, 3);
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (rep.residuals[i] < rep.residuals[best]) best = i;
    rep.sign = static_cast<ResolutionSign>(best);
    rep.residual = rep.residuals[best];
    return rep;
}

double traceFormulaResidual(const Mat2& U, const Mat2& V) {
    SignedTrace tuv = traceSigned(U * V), tu = traceSigned(U), tv = traceSigned(V),
                tiv = traceSigned(invert(U) * V);
    int s[3] = {tuv.sign, -tu.sign * tv.sign, tiv.sign};
    double l[3] = {tuv.logAbs, tu.logAbs + tv.logAbs, tiv.logAbs};
    return logSumResidual(s, l, 3);
}

}  // namespace teichlab
