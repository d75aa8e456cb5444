#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/rng.hpp"
#include "test_util.hpp"

using namespace teichlab;

namespace {

double fig8Oracle(double x, double y, double z) {
    return 2 * std::acosh(2 * std::cosh(x / 2) * std::cosh(y / 2) + std::cosh(z / 2));
}

bool hasTerm(const ExpSumForm& f, LinearForm form, double coeff, double tol) {
    for (const auto& t : f.terms)
        if (t.form == form) return std::fabs(t.coeff - coeff) < tol;
    return false;
}

}  // namespace

TEST_SUITE("lengths") {

TEST_CASE("loopLength examples") {
    double l0 = loopLength(figureEightLoop(), pantsPoint(1e-7, 1e-7, 1e-7));
    CHECK(l0 == doctest::Approx(2 * std::acosh(3.0)).epsilon(1e-9));
    CHECK(l0 == doctest::Approx(3.52549).epsilon(1e-5));
    CHECK(loopLength(boundaryWordLoop(), pantsPoint(0.4, 2.0, 1.7)) == doctest::Approx(1.7).epsilon(1e-12));
    double la = 2 * std::asinh(1.0);
    CHECK(loopLength(torusDualLoop(), torusPoint(la, 0, 0)) == doctest::Approx(la).epsilon(1e-12));
    for (double x : {0.3, 2.0, 9.0})
        CHECK(tt::rel(loopLength(figureEightLoop(), pantsPoint(x, 1.1, 2.5)), fig8Oracle(x, 1.1, 2.5)) < 1e-12);
}

TEST_CASE("okaiDualLength") {
    for (double la : {0.5, 1.0, 3.0}) {
        double lb = okaiDualLength(la, 0, 0);
        CHECK(std::cosh(lb / 2) == doctest::Approx(1 / std::tanh(la / 2)).epsilon(1e-13));
        CHECK(okaiDualLength(la, 1.7, 2.0) == okaiDualLength(la, -1.7, 2.0));
    }
    double la = 2 * std::asinh(1.0);
    CHECK(okaiDualLength(la, 0, 0) == doctest::Approx(la).epsilon(1e-13));
    CHECK(la == doctest::Approx(1.76275).epsilon(1e-5));
    CHECK_THROWS_AS(okaiDualLength(0, 0, 0), InvalidArgument);
}

TEST_CASE("twist calibration") {
    LoopSpec dual = torusDualLoop();
    FNPoint fn = torusPoint(1.7, 0.9, 1.0);
    double t0 = calibrateTwistOrigin(dual, "a", fn);
    CHECK(std::fabs(t0) < 1e-8);
    double tl = calibrateTwistOrigin(dual, "a", fn, {-3, -1});
    double tr = calibrateTwistOrigin(dual, "a", fn, {1, 3});
    CHECK(std::fabs(tl - tr) < 1e-8);
    double ts = calibrateTwistOrigin(dehnTwist(dual, "a", 1), "a", fn);
    CHECK(ts == doctest::Approx(t0 - 1.7).epsilon(1e-9));
    // twisted loop: calibration recovers the shift
    LoopSpec shifted = dual;
    shifted.incursions[0].m = 1;
    CHECK(calibrateTwistOrigin(shifted, "a", fn) == doctest::Approx(-0.85).epsilon(1e-9));
    // no interior minimum for a loop not crossing the curve
    LoopSpec around{fourHoledSphere(), {}};
    Incursion inc;
    inc.pantsId = "P1";
    inc.entry = 1;
    inc.exit = 2;
    inc.form = IncursionForm::internal;
    inc.word = PantsWord::parse("a1");
    around.incursions.push_back(inc);
    FNPoint fp;
    fp.interior = {{"c", {1.1, 0.3}}};
    fp.boundary = {{"d1", 0.6}, {"d2", 0.9}, {"d3", 1.2}, {"d4", 0.5}};
    CHECK_THROWS_AS(calibrateTwistOrigin(around, "c", fp), CalibrationFailure);
}

TEST_CASE("Okai agreement after calibration") {
    LoopSpec dual = torusDualLoop();
    double worst = 0;
    for (double L : {0.0, 1.0, 4.0})
        for (double la = 0.5; la <= 6.0001; la += 0.25) {
            double t0 = calibrateTwistOrigin(dual, "a", torusPoint(la, 0, L));
            for (double tau = -3; tau <= 3.0001; tau += 0.25) {
                double h = loopLength(dual, torusPoint(la, tau, L));
                worst = std::max(worst, tt::rel(h, okaiDualLength(la, tau - t0, L)));
            }
        }
    CHECK(worst < 1e-6);
}

TEST_CASE("growth probes") {
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(0.5 * k);
    ProbeReport z = boundaryGrowthProbe(figureEightLoop(), pantsPoint(1, 1.5, 0.5), "z", grid);
    CHECK(z.monotone);
    CHECK(z.divergent);
    for (size_t i = 1; i < z.samples.size(); ++i) CHECK(z.samples[i].second > z.samples[i - 1].second);

    std::vector<double> gx;
    for (int k = 1; k <= 40; ++k) gx.push_back(1.0 * k);
    ProbeReport x = boundaryGrowthProbe(figureEightLoop(), pantsPoint(1, 1.5, 0.5), "x", gx);
    CHECK(x.divergent);
    double slope = (x.samples.back().second - x.samples[x.samples.size() - 2].second);
    CHECK(slope == doctest::Approx(1.0).epsilon(1e-6));

    // loop inside P1 does not see d3
    LoopSpec inner{fourHoledSphere(), {}};
    Incursion inc;
    inc.pantsId = "P1";
    inc.entry = 1;
    inc.exit = 2;
    inc.form = IncursionForm::internal;
    inc.word = PantsWord::parse("a1b-1");
    inner.incursions.push_back(inc);
    FNPoint fp;
    fp.interior = {{"c", {1.1, 0.3}}};
    fp.boundary = {{"d1", 0.6}, {"d2", 0.9}, {"d3", 1.2}, {"d4", 0.5}};
    ProbeReport d3 = boundaryGrowthProbe(inner, fp, "d3", grid);
    CHECK(d3.monotone);
    CHECK(!d3.divergent);
    CHECK_THROWS_AS(boundaryGrowthProbe(inner, fp, "c", grid), InvalidArgument);
}

TEST_CASE("probes on filled boundaries of the catalog") {
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(0.1 + 0.5 * k);
    int probes = 0;
    for (const auto& c : loopCatalog()) {
        for (const auto& b : c.filledBoundaries) {
            ProbeReport r = boundaryGrowthProbe(c.loop, c.base, b, grid);
            CHECK_MESSAGE(r.monotone, c.name << " " << b);
            CHECK_MESSAGE(r.divergent, c.name << " " << b);
            ++probes;
        }
    }
    CHECK(probes >= 5);
}

TEST_CASE("ray asymptotics") {
    LoopSpec f8 = figureEightLoop();
    FNPoint base = pantsPoint(0.5, 0.5, 0.5);
    RayReport r = rayAsymptotics(f8, base, {1, 1, 0}, 60);
    CHECK(r.slope == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(r.stable);
    RayReport rz = rayAsymptotics(f8, base, {0, 0, 1}, 60);
    CHECK(rz.slope == doctest::Approx(1.0).epsilon(1e-6));
    // oracle slope along z at T = 200
    double T = 200;
    double oracle = (fig8Oracle(0.5, 0.5, 0.5 + 2 * T) - fig8Oracle(0.5, 0.5, 0.5 + T)) / T;
    CHECK(rz.slope == doctest::Approx(oracle).epsilon(1e-6));
    // mixed direction: max(dx + dy, dz)
    RayReport rm = rayAsymptotics(f8, base, {1, 0, 3}, 200);
    CHECK(rm.slope == doctest::Approx(3 / std::sqrt(10.0)).epsilon(1e-6));

    LoopSpec dual = torusDualLoop();
    FNPoint tb = torusPoint(1.2, 0.0, 0.5);
    // coordinates: l:a, t:a, L:d
    RayReport rt = rayAsymptotics(dual, tb, {0, 1, 0}, 50);
    CHECK(rt.slope == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rt.stable);
    CHECK_THROWS_AS(rayAsymptotics(dual, tb, {-1, 0, 0}, 50), InvalidArgument);
    CHECK_THROWS_AS(rayAsymptotics(dual, tb, {0, 0, 0}, 50), InvalidArgument);
}

TEST_CASE("expSumFit") {
    auto cands = halfIntegerForms(1);
    auto grid = uniformGrid(static_cast<int>(10 * cands.size()), 0.1, 4, 1);
    auto held = uniformGrid(200, 0.1, 4, 2);
    ExpSumForm f8 = expSumFit(figureEightLoop(), cands, grid, held);
    CHECK(f8.terms.size() == 6);
    for (LinearForm t : std::vector<LinearForm>{{0.5, 0.5, 0}, {0.5, -0.5, 0}, {-0.5, 0.5, 0},
                                                {-0.5, -0.5, 0}, {0, 0, 0.5}, {0, 0, -0.5}})
        CHECK(hasTerm(f8, t, 0.5, 1e-8));
    CHECK(f8.heldOutResidual < 1e-6);

    ExpSumForm ab = expSumFit(boundaryWordLoop(), cands, grid, held);
    CHECK(ab.terms.size() == 2);
    CHECK(hasTerm(ab, {0, 0, 0.5}, 0.5, 1e-8));
    CHECK(hasTerm(ab, {0, 0, -0.5}, 0.5, 1e-8));

    // a3b1 needs the form 3x/2, outside |i| <= 1
    CHECK_THROWS_AS(expSumFit(pantsWordLoop(PantsWord::parse("a3b1")), cands, grid, held), FitFailure);
    CHECK_THROWS_AS(expSumFit(torusDualLoop(), cands, grid, held), InvalidArgument);
}

TEST_CASE("expSumFit positivity for positive words") {
    Rng rng(17);
    auto cands = halfIntegerForms(3);
    auto grid = uniformGrid(static_cast<int>(10 * cands.size()), 0.1, 3, 3);
    auto held = uniformGrid(200, 0.1, 3, 4);
    int done = 0;
    while (done < 10) {
        PantsWord w;
        int total = 0;
        Letter l = rng.below(2) ? Letter::a : Letter::b;
        int syl = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < syl; ++i) {
            int e = 1 + static_cast<int>(rng.below(2));
            total += e;
            w.syllables.push_back({l, e});
            l = l == Letter::a ? Letter::b : Letter::a;
        }
        if (total > 3) continue;
        ExpSumForm f = expSumFit(pantsWordLoop(w), cands, grid, held);
        for (const auto& t : f.terms) CHECK(t.coeff > 0);
        ++done;
    }
}

TEST_CASE("expSumFit idempotence") {
    auto cands = halfIntegerForms(1);
    auto grid = uniformGrid(static_cast<int>(10 * cands.size()), 0.1, 4, 5);
    auto held = uniformGrid(100, 0.1, 4, 6);
    ExpSumForm f = expSumFit(figureEightLoop(), cands, grid, held);
    std::vector<LinearForm> support;
    for (const auto& t : f.terms) support.push_back(t.form);
    ExpSumForm g = expSumFit(figureEightLoop(), support, grid, held);
    REQUIRE(g.terms.size() == f.terms.size());
    for (size_t i = 0; i < g.terms.size(); ++i) {
        CHECK(g.terms[i].form == f.terms[i].form);
        CHECK(g.terms[i].coeff == doctest::Approx(f.terms[i].coeff).epsilon(1e-9));
    }
}

}
