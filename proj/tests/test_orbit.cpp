#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/loops.hpp"
#include "teichlab/orbit.hpp"
#include "teichlab/rng.hpp"

using namespace teichlab;

namespace {

FNPoint squareTorus() { return torusPoint(2 * std::asinh(1.0), 0.0, 0.0); }

// Lower Christoffel word of slope q/p: p letters x and q letters y.
PantsWord christoffel(int p, int q, int x, int y) {
    std::vector<int> w;
    int n = p + q;
    for (int i = 1; i <= n; ++i) {
        long up = static_cast<long>(i) * q / n, prev = static_cast<long>(i - 1) * q / n;
        w.push_back(up > prev ? y : x);
    }
    return fromLetters(w);
}

// Simple closed curves of the once-holed torus are the primitive classes; one per slope.
std::set<std::string> christoffelOracle(const FNPoint& fn, double a, int maxSum) {
    std::set<std::string> out;
    auto consider = [&](const PantsWord& w) {
        if (orbitWordLength(w, fn) <= a) out.insert(canonicalKey(w));
    };
    consider(PantsWord::parse("a1"));
    consider(PantsWord::parse("b1"));
    for (int p = 1; p <= maxSum; ++p)
        for (int q = 1; p + q <= maxSum; ++q) {
            if (std::gcd(p, q) != 1) continue;
            consider(christoffel(p, q, 1, 2));
            consider(christoffel(p, q, 1, -2));
        }
    return out;
}

PantsWord randomWord(Rng& rng, int n) {
    std::vector<int> w;
    const int letters[] = {1, -1, 2, -2};
    for (int i = 0; i < n; ++i) w.push_back(letters[rng.below(4)]);
    return fromLetters(w);
}

}  // namespace

TEST_SUITE("orbit") {

TEST_CASE("canonical words") {
    CHECK(canonicalWord(PantsWord::parse("a1b1a-1")) == PantsWord::parse("b1"));
    CHECK(canonicalWord(PantsWord::parse("a1b1")) == canonicalWord(PantsWord::parse("b1a1")));
    CHECK(canonicalWord(PantsWord::parse("a-1")) == PantsWord::parse("a1"));
    CHECK(canonicalKey(PantsWord::parse("b1a1")) == "ab");
    CHECK(canonicalKey(PantsWord::parse("B")) == "b");
    Rng rng(4);
    for (int k = 0; k < 1000; ++k) {
        PantsWord w = randomWord(rng, 1 + static_cast<int>(rng.below(12)));
        PantsWord c = canonicalWord(w);
        CHECK(canonicalWord(c) == c);
        CHECK(canonicalWord(inverse(w)) == c);
        // conjugation by a letter keeps the class
        PantsWord conj = concat(concat(PantsWord::parse("b1"), w), PantsWord::parse("b-1"));
        CHECK(canonicalWord(conj) == c);
    }
    CHECK(isProperPower(PantsWord::parse("a1b1a1b1")));
    CHECK(isProperPower(PantsWord::parse("a2")));
    CHECK_FALSE(isProperPower(PantsWord::parse("a2b1")));
    CHECK(isProperPower(PantsWord::parse("b1a1b1a1b-1")) == isProperPower(PantsWord::parse("a1b1")));
}

TEST_CASE("mapping class neighbors") {
    auto nb = mcgNeighbors(PantsWord::parse("b1"));
    bool found = false;
    for (const auto& w : nb) found |= w == canonicalWord(PantsWord::parse("b1a1"));
    CHECK(found);
    Rng rng(9);
    for (int k = 0; k < 200; ++k) {
        PantsWord w = canonicalWord(randomWord(rng, 1 + static_cast<int>(rng.below(8))));
        if (w.empty()) continue;
        for (const auto& v : mcgNeighbors(w)) {
            auto back = mcgNeighbors(v);
            CHECK(std::count(back.begin(), back.end(), w) == 1);
        }
    }
    // BFS depth 3 from a: primitive classes only
    std::set<std::string> seen{canonicalKey(PantsWord::parse("a1"))};
    std::vector<PantsWord> frontier{PantsWord::parse("a1")};
    for (int depth = 0; depth < 3; ++depth) {
        std::vector<PantsWord> next;
        for (const auto& w : frontier)
            for (const auto& v : mcgNeighbors(w))
                if (seen.insert(canonicalKey(v)).second) next.push_back(v);
        frontier = next;
    }
    CHECK(seen.size() > 10);
    for (const auto& k : seen) CHECK_FALSE(isProperPower(PantsWord::parse(k)));
    CHECK(mcgNeighbors(PantsWord::parse("a1b-1"), OrbitSurface::pants).empty());
}

TEST_CASE("torus representation") {
    for (double L : {0.0, 0.9, 3.0})
        for (double tau : {0.0, 0.4, -1.7}) {
            FNPoint fn = torusPoint(1.3, tau, L);
            TorusRepresentation rho = torusRepresentation(fn);
            Mat2 comm = compose({rho.a, rho.b, invert(rho.a), invert(rho.b)});
            CHECK(traceSigned(comm).value == doctest::Approx(-2 * std::cosh(L / 2)).epsilon(1e-9));
            CHECK(orbitWordLength(PantsWord::parse("a1"), fn) == doctest::Approx(1.3).epsilon(1e-12));
            CHECK(orbitWordLength(PantsWord::parse("b1"), fn) ==
                  doctest::Approx(okaiDualLength(1.3, tau, L)).epsilon(1e-9));
            for (int k : {1, -1, 2}) {
                std::string w = "a" + std::to_string(k) + "b1";
                CHECK(orbitWordLength(PantsWord::parse(w), fn) ==
                      doctest::Approx(loopLength(dehnTwist(torusDualLoop(), "a", k), fn)).epsilon(1e-9));
            }
        }
    // square torus: a and b have the same length
    CHECK(orbitWordLength(PantsWord::parse("b1"), squareTorus()) == doctest::Approx(2 * std::asinh(1.0)));
    FNPoint bad;
    bad.boundary = {{"q", 1.0}};
    CHECK_THROWS_AS(orbitSurfaceOf(bad), InvalidArgument);
}

TEST_CASE("orbit enumeration against the slope oracle") {
    FNPoint fn = squareTorus();
    auto e = enumerateOrbit(PantsWord::parse("a1"), fn, 6, 1);
    std::set<std::string> bfs;
    for (const auto& x : e) bfs.insert(canonicalKey(x.word));
    CHECK(bfs == christoffelOracle(fn, 6, 40));
    CHECK(e.size() >= 4);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i].length >= e[i - 1].length);

    CHECK(enumerateOrbit(PantsWord::parse("a1"), fn, 1.0, 1).empty());
    long prev = 0;
    for (double a = 2; a <= 12; a += 0.5) {
        long n = countAtMost(enumerateOrbit(PantsWord::parse("a1"), fn, 12, 1), a);
        CHECK(n >= prev);
        prev = n;
    }
    // conjugated seed, same orbit
    auto c = enumerateOrbit(PantsWord::parse("b1a1b-1"), fn, 8, 1);
    auto d = enumerateOrbit(PantsWord::parse("a1"), fn, 8, 1);
    REQUIRE(c.size() == d.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].word == d[i].word);

    // closure: one-twist images that are short enough are present
    std::set<std::string> keys;
    for (const auto& x : d) keys.insert(canonicalKey(x.word));
    for (const auto& x : d)
        for (const auto& v : mcgNeighbors(x.word))
            if (orbitWordLength(v, fn) <= 8) CHECK(keys.count(canonicalKey(v)) == 1);

    // non-simple seed on a generic torus
    FNPoint g = torusPoint(1.1, 0.3, 0.5);
    auto f8 = enumerateOrbit(PantsWord::parse("a2b1"), g, 9, 2);
    for (const auto& x : f8) CHECK(x.length <= 9);
    auto steps = countingSteps(d);
    CHECK(steps.back().second == static_cast<long>(d.size()));
}

TEST_CASE("margin guard and pants") {
    FNPoint fn = squareTorus();
    CHECK_NOTHROW(enumerateOrbit(PantsWord::parse("a1"), fn, 10, 2));
    // on a strongly twisted torus short classes hide behind long intermediate ones
    FNPoint twisted = torusPoint(1.0, 4.0, 0.0);
    CHECK_THROWS_AS(enumerateOrbit(PantsWord::parse("b1"), twisted, 8, 0.3), MarginTooSmall);
    CHECK_NOTHROW(enumerateOrbit(PantsWord::parse("b1"), twisted, 8, 3));
    CHECK_THROWS_AS(enumerateOrbit(PantsWord::parse("a1"), fn, 10, -1), InvalidArgument);
    CHECK_THROWS_AS(enumerateOrbitPruned(PantsWord::parse("a1"), fn, 40, 2, 100), ConfigurationError);
    FNPoint p = pantsPoint(1, 1.2, 0.8);
    auto e = enumerateOrbit(PantsWord::parse("a1b-1"), p, 10, 1);
    REQUIRE(e.size() == 1);
    CHECK(e[0].length == doctest::Approx(loopLength(figureEightLoop(), p)));
}

}
