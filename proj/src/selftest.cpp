#include "teichlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/frfit.hpp"
#include "teichlab/integrate.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/measure.hpp"
#include "teichlab/orbit.hpp"
#include "teichlab/pants.hpp"
#include "teichlab/rng.hpp"

namespace teichlab {

namespace {

struct Entry {
    std::string module, property;
    double residual, tolerance;
};

Mat2 randomWord(Rng& rng, int n, double range) {
    std::vector<Mat2> f;
    for (int i = 0; i < n; ++i) {
        auto kind = static_cast<GeneratorKind>(rng.below(3));
        f.push_back(makeGenerator(kind, rng.uniform(-range, range)));
    }
    return compose(f);
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

Json runSelftest(std::uint64_t seed) {
    std::vector<Entry> out;
    auto add = [&](const char* module, const char* property, const std::function<std::pair<double, double>()>& f) {
        double res, tol;
        try {
            std::tie(res, tol) = f();
        } catch (const std::exception& e) {
            // a throwing check counts as failed
            res = std::numeric_limits<double>::infinity();
            tol = 0;
        }
        out.push_back({module, property, res, tol});
    };

    add("hypmat", "unimodularity of random words", [&] {
        Rng rng(seed, 1);
        double worst = 0;
        for (int k = 0; k < 200; ++k) worst = std::max(worst, unimodularityError(randomWord(rng, 30, 10)));
        return std::pair{worst, 1e-8};
    });
    add("hypmat", "trace formula Tr(UV) = Tr U Tr V - Tr(U^-1 V)", [&] {
        Rng rng(seed, 2);
        double worst = 0;
        for (int k = 0; k < 200; ++k)
            worst = std::max(worst, traceFormulaResidual(randomWord(rng, 10, 5), randomWord(rng, 10, 5)));
        return std::pair{worst, 1e-9};
    });
    add("pants", "hexagon and pentagon relations", [&] {
        double worst = 0;
        for (double x : {0.05, 0.7, 3.0, 12.0})
            for (double y : {0.1, 1.3, 8.0})
                for (double z : {0.0, 0.4, 2.5, 15.0}) worst = std::max(worst, pantsResiduals(solvePants(x, y, z)).max());
        return std::pair{worst, 1e-10};
    });
    add("loops", "figure-eight closed form", [&] {
        Rng rng(seed, 3);
        double worst = 0;
        for (int k = 0; k < 100; ++k) {
            double x = rng.uniform(0.1, 8), y = rng.uniform(0.1, 8), z = rng.uniform(0, 8);
            double ref = 2 * std::acosh(2 * std::cosh(x / 2) * std::cosh(y / 2) + std::cosh(z / 2));
            worst = std::max(worst, rel(loopLength(figureEightLoop(), pantsPoint(x, y, z)), ref));
        }
        return std::pair{worst, 1e-9};
    });
    add("loops", "boundary word a1b1 has length z", [&] {
        double worst = 0;
        for (double z : {0.3, 1.0, 4.0}) worst = std::max(worst, rel(loopLength(boundaryWordLoop(), pantsPoint(1.1, 0.7, z)), z));
        return std::pair{worst, 1e-9};
    });
    add("loops", "Dehn twist equals twist shift by the curve length", [&] {
        double worst = 0;
        for (const auto& c : loopCatalog())
            for (const auto& cv : c.loop.surface.curves) {
                if (!cv.interior) continue;
                FNPoint shifted = c.base;
                shifted.setTwist(cv.id, c.base.twist(cv.id) + c.base.length(cv.id));
                worst = std::max(worst, rel(loopLength(dehnTwist(c.loop, cv.id, 1), c.base), loopLength(c.loop, shifted)));
            }
        return std::pair{worst, 1e-9};
    });
    add("lengths", "dual curve length matches the once-holed torus formula", [&] {
        double worst = 0;
        LoopSpec dual = torusDualLoop();
        for (double L : {0.0, 1.0, 4.0})
            for (double la : {0.5, 2.0, 6.0}) {
                double off = calibrateTwistOrigin(dual, "a", torusPoint(la, 0, L));
                for (double t : {-3.0, -0.5, 0.0, 1.7})
                    worst = std::max(worst, rel(loopLength(dual, torusPoint(la, off + t, L)), okaiDualLength(la, t, L)));
            }
        return std::pair{worst, 1e-6};
    });
    add("lengths", "figure-eight is monotone and divergent in z", [&] {
        std::vector<double> grid;
        for (int k = 0; k <= 40; ++k) grid.push_back(0.1 + 0.5 * k);
        ProbeReport p = boundaryGrowthProbe(figureEightLoop(), pantsPoint(1, 1.5, 0.5), "z", grid);
        return std::pair{(p.monotone && p.divergent) ? 0.0 : 1.0, 0.0};
    });
    add("measure", "opL(e^l) = 1 up to the trapezoid error", [&] {
        GridParams gp{0, 5, 0.01};
        DensityGrid l = opL(DensityGrid::sample(gp, [](double x) { return std::exp(x); }));
        double worst = 0;
        for (double v : l.mass) worst = std::max(worst, std::fabs(v - 1));
        return std::pair{worst, std::exp(5.0) * gp.binWidth * gp.binWidth};
    });
    add("measure", "pushforward of x1 + x2 matches 1*1(l) = l (L1, 3 sigma)", [&] {
        GridParams gp{0, 10, 0.25};
        Evaluator h = [](std::span<const double> x) { return x[0] + x[1]; };
        DensityGrid g = pushforwardDensity(h, WeightSpec::constant(2), DomainSpec::box({0, 0}, {10, 10}), 200000, seed, gp);
        DensityGrid ref = DensityGrid::make(gp);
        // bin averages of the exact density l
        for (std::size_t i = 0; i < ref.bins(); ++i) ref.mass[i] = ref.center(i);
        L1Comparison c = compareL1(g, ref);
        return std::pair{c.distance, c.tolerance};
    });
    add("frfit", "synthetic l + e^{-l/2}: decay rate in [0.4, 0.6] and bound check", [&] {
        DensityGrid g = DensityGrid::sample(GridParams{0, 30, 0.05}, [](double l) { return l + std::exp(-l / 2); });
        FRReport r = frDecompose(g, 1, 12, 30);
        double miss = std::max(0.0, std::fabs(r.lambdaHat - 0.5) - 0.1);
        return std::pair{frBoundCheck(r) ? miss : 1.0, 0.0};
    });
    add("integrate", "twist unfolding at K = 32", [&] {
        TestFunction F = TestFunction::spline(2, 0.5, {0.3, 1.0, 0.7, 0.2});
        return std::pair{unfoldingCheck(F, 1.3, 0.5, 32).difference, 1e-6};
    });
    add("orbit", "canonical word is idempotent", [&] {
        Rng rng(seed, 4);
        double bad = 0;
        for (int k = 0; k < 300; ++k) {
            PantsWord w;
            int n = 1 + static_cast<int>(rng.below(8));
            for (int i = 0; i < n; ++i) {
                int e = 1 + static_cast<int>(rng.below(3));
                w.syllables.push_back({i % 2 ? Letter::b : Letter::a, rng.below(2) ? e : -e});
            }
            PantsWord c = canonicalWord(w);
            bad += !(canonicalWord(c) == c);
        }
        return std::pair{bad, 0.0};
    });
    add("orbit", "square torus simple-curve count N(10) = 28", [&] {
        FNPoint sq = torusPoint(2 * std::asinh(1.0), 0, 0);
        auto e = enumerateOrbit(PantsWord::parse("b1"), sq, 10, 1);
        return std::pair{std::fabs(static_cast<double>(countAtMost(e, 10)) - 28), 0.0};
    });

    Json props = Json::array();
    bool all = true;
    for (const auto& e : out) {
        bool pass = e.residual <= e.tolerance;
        all = all && pass;
        props.push_back({{"module", e.module},
                         {"property", e.property},
                         {"residual", std::isfinite(e.residual) ? Json(e.residual) : Json(nullptr)},
                         {"tolerance", e.tolerance},
                         {"pass", pass}});
    }
    return {{"properties", props}, {"passed", all}};
}

}  // namespace teichlab
