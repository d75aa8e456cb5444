#include "teichlab/integrate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/parallel.hpp"
#include "teichlab/rng.hpp"

namespace teichlab {

namespace {

constexpr double kMinLength = 1e-6;
constexpr std::int64_t kChunk = 1 << 15;

enum class Role { interiorLength, twist, multicurve };

struct Layout {
    std::vector<std::string> names;
    std::vector<Role> roles;
    std::vector<std::string> curve;  // curve id per coordinate
};

Layout layoutOf(const ExpectationConfig& cfg) {
    Layout l;
    if (cfg.analytic != AnalyticLength::none) {
        int d = cfg.analytic == AnalyticLength::figureEight ? 3 : cfg.analyticDim;
        for (int i = 0; i < d; ++i) {
            std::string id = cfg.multicurve.size() == static_cast<std::size_t>(d) ? cfg.multicurve[static_cast<std::size_t>(i)]
                                                                                  : "y" + std::to_string(i + 1);
            l.names.push_back(id);
            l.roles.push_back(Role::multicurve);
            l.curve.push_back(id);
        }
        return l;
    }
    std::vector<std::string> interior;
    for (const auto& c : cfg.loop->surface.curves)
        if (c.interior) interior.push_back(c.id);
    std::sort(interior.begin(), interior.end());
    for (const auto& id : interior) {
        l.names.push_back("l_" + id);
        l.roles.push_back(Role::interiorLength);
        l.curve.push_back(id);
        l.names.push_back("tau_" + id);
        l.roles.push_back(Role::twist);
        l.curve.push_back(id);
    }
    for (const auto& id : cfg.multicurve) {
        l.names.push_back(id);
        l.roles.push_back(Role::multicurve);
        l.curve.push_back(id);
    }
    return l;
}

Evaluator lengthEvaluator(const ExpectationConfig& cfg, const Layout& lay) {
    if (cfg.analytic == AnalyticLength::figureEight)
        return [](std::span<const double> x) { return figureEightLength(x[0], x[1], x[2]); };
    if (cfg.analytic == AnalyticLength::linearSum)
        return [](std::span<const double> x) {
            double s = 0;
            for (double v : x) s += v;
            return s;
        };
    FNPoint base;
    for (const auto& [id, v] : cfg.fixedBoundary) base.boundary[id] = v;
    LoopSpec loop = *cfg.loop;
    return [loop, base, lay](std::span<const double> x) {
        FNPoint p = base;
        for (std::size_t i = 0; i < x.size(); ++i) {
            switch (lay.roles[i]) {
                case Role::interiorLength: p.interior[lay.curve[i]].first = std::max(x[i], kMinLength); break;
                case Role::twist: p.interior[lay.curve[i]].second = x[i]; break;
                case Role::multicurve: p.boundary[lay.curve[i]] = std::max(x[i], kMinLength); break;
            }
        }
        return loopLength(loop, p);
    };
}

DomainSpec domainOf(const Layout& lay, double R) {
    DomainSpec d;
    for (Role r : lay.roles) {
        d.lower.push_back(r == Role::twist ? -R : 0.0);
        d.upper.push_back(R);
    }
    return d;
}

}  // namespace

double cubicBSpline(double t) {
    double a = std::fabs(t);
    if (a < 1) return 2.0 / 3 - a * a + a * a * a / 2;
    if (a < 2) return (2 - a) * (2 - a) * (2 - a) / 6;
    return 0;
}

TestFunction TestFunction::indicator(double a) {
    TestFunction f;
    f.kind = Kind::indicator;
    f.a = a;
    f.validate();
    return f;
}

TestFunction TestFunction::spline(double knot0, double spacing, std::vector<double> coeffs) {
    TestFunction f;
    f.kind = Kind::spline;
    f.knot0 = knot0;
    f.spacing = spacing;
    f.coeffs = std::move(coeffs);
    f.validate();
    return f;
}

double TestFunction::operator()(double ell) const {
    switch (kind) {
        case Kind::zero: return 0;
        case Kind::indicator: return ell >= 0 && ell <= a ? 1.0 : 0.0;
        case Kind::spline: {
            double t = (ell - knot0) / spacing;
            long k0 = static_cast<long>(std::floor(t)) - 1;
            double s = 0;
            for (long k = k0; k <= k0 + 3; ++k)
                if (k >= 0 && k < static_cast<long>(coeffs.size())) s += coeffs[static_cast<std::size_t>(k)] * cubicBSpline(t - k);
            return s;
        }
    }
    return 0;
}

double TestFunction::supportMax() const {
    switch (kind) {
        case Kind::zero: return 0;
        case Kind::indicator: return a;
        case Kind::spline: return knot0 + spacing * (static_cast<double>(coeffs.size()) + 1);
    }
    return 0;
}

bool TestFunction::isZero() const {
    if (kind == Kind::zero) return true;
    if (kind == Kind::indicator) return a < 0;
    return std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0; });
}

void TestFunction::validate() const {
    if (kind == Kind::indicator && !std::isfinite(a)) throw ConfigurationError("test function: indicator end must be finite");
    if (kind == Kind::spline) {
        if (!(spacing > 0) || !std::isfinite(spacing) || !std::isfinite(knot0))
            throw ConfigurationError("test function: spline needs finite knot0 and spacing > 0");
        if (coeffs.empty()) throw ConfigurationError("test function: spline needs coefficients");
        for (double c : coeffs)
            if (!std::isfinite(c)) throw ConfigurationError("test function: non-finite spline coefficient");
    }
}

void ExpectationConfig::validate() const {
    if (mGamma < 1) throw ConfigurationError("expectation: mGamma must be >= 1");
    F.validate();
    if (normalization && !(*normalization > 0 && std::isfinite(*normalization)))
        throw ConfigurationError("expectation: normalization must be > 0");
    if (radius < 0 || !std::isfinite(radius)) throw ConfigurationError("expectation: radius must be >= 0");
    if (analytic != AnalyticLength::none) {
        if (loop) throw ConfigurationError("expectation: give either a loop or an analytic length, not both");
        int d = analytic == AnalyticLength::figureEight ? 3 : analyticDim;
        if (d < 1) throw ConfigurationError("expectation: analyticDim must be >= 1");
        if (!multicurve.empty() && static_cast<int>(multicurve.size()) != d)
            throw ConfigurationError("expectation: multicurve must name all analytic coordinates");
        if (teichHalfDim != 0) throw ConfigurationError("expectation: analytic lengths have no interior curves");
        if (curveCount != d) throw ConfigurationError("expectation: curveCount must be " + std::to_string(d));
        if (!fixedBoundary.empty()) throw ConfigurationError("expectation: analytic lengths take no fixed boundary");
    } else {
        if (!loop) throw ConfigurationError("expectation: missing loop");
        loop->validate();
        const SurfaceGraph& s = loop->surface;
        if (teichHalfDim != s.interiorCount())
            throw ConfigurationError("expectation: teichHalfDim " + std::to_string(teichHalfDim) +
                                     " does not match the " + std::to_string(s.interiorCount()) + " interior curves");
        if (curveCount != static_cast<int>(multicurve.size()))
            throw ConfigurationError("expectation: curveCount must equal the number of multicurve entries");
        for (const auto& c : s.curves) {
            if (c.interior) continue;
            bool inMulti = std::count(multicurve.begin(), multicurve.end(), c.id) > 0;
            bool fixed = fixedBoundary.count(c.id) > 0;
            if (inMulti == fixed)
                throw ConfigurationError("expectation: boundary curve '" + c.id +
                                         "' must be exactly one of multicurve or fixedBoundary");
        }
        for (const auto& id : multicurve)
            if (!s.hasCurve(id) || s.curve(id).interior)
                throw ConfigurationError("expectation: multicurve entry '" + id + "' is not a boundary curve");
        for (const auto& [id, v] : fixedBoundary) {
            if (!s.hasCurve(id) || s.curve(id).interior)
                throw ConfigurationError("expectation: fixed entry '" + id + "' is not a boundary curve");
            if (!(v >= 0) || !std::isfinite(v)) throw ConfigurationError("expectation: fixed length must be >= 0");
        }
    }
    int vars = complementVolume.variables();
    int expected = curveCount + static_cast<int>(fixedBoundary.size());
    if (vars != 0 && vars != expected)
        throw ConfigurationError("expectation: complementVolume needs " + std::to_string(expected) + " variables");
}

double propernessRadius(const ExpectationConfig& cfg, double supValue) {
    cfg.validate();
    Layout lay = layoutOf(cfg);
    Evaluator h = lengthEvaluator(cfg, lay);
    const std::size_t d = lay.roles.size();
    Rng rng(0x9e37, 77);
    std::vector<double> x(d);
    for (double R = 1; R <= 1e4; R *= 2) {
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i) {
            for (int side : {1, -1}) {
                if (side < 0 && lay.roles[i] != Role::twist) continue;
                for (int k = 0; k < 65 && ok; ++k) {
                    for (std::size_t j = 0; j < d; ++j) {
                        double lo = lay.roles[j] == Role::twist ? -R : 0.0;
                        // first point: the inner corner of the face
                        x[j] = k == 0 ? 0.0 : rng.uniform(lo, R);
                    }
                    x[i] = side * R;
                    double v;
                    try {
                        v = h(x);
                    } catch (const NonHyperbolicElement&) {
                        v = 0;  // degenerate: the length collapsed
                    }
                    if (!(v > supValue)) ok = false;
                }
            }
        }
        if (ok) return 2 * R;
    }
    throw ConfigurationError("expectation: effective domain is unbounded (properness search failed at R = 1e4)");
}

FormulaSetup formulaSetup(const ExpectationConfig& cfg, double supValue) {
    cfg.validate();
    Layout lay = layoutOf(cfg);
    FormulaSetup s;
    s.names = lay.names;
    s.radius = cfg.radius > 0 ? cfg.radius : propernessRadius(cfg, supValue);
    s.domain = domainOf(lay, s.radius);
    s.h = lengthEvaluator(cfg, lay);
    std::vector<std::size_t> yIdx;
    for (std::size_t i = 0; i < lay.roles.size(); ++i)
        if (lay.roles[i] == Role::multicurve) yIdx.push_back(i);
    std::vector<double> fixedL;
    for (const auto& [id, v] : cfg.fixedBoundary) fixedL.push_back(v);
    double scale = 1.0 / cfg.mGamma / cfg.normalization.value_or(1.0);
    Polynomial V = cfg.complementVolume;
    s.weight = [yIdx, fixedL, scale, V](std::span<const double> x) {
        double w = scale;
        for (std::size_t i : yIdx) w *= x[i];
        if (V.variables() == 0) return w * V.eval({});
        std::vector<double> args;
        args.reserve(yIdx.size() + fixedL.size());
        for (std::size_t i : yIdx) args.push_back(x[i]);
        args.insert(args.end(), fixedL.begin(), fixedL.end());
        return w * V.eval(args);
    };
    return s;
}

Estimate expectationViaFormula(const ExpectationConfig& cfg, std::int64_t nSamples, std::uint64_t seed) {
    cfg.validate();
    if (nSamples < 2) throw InvalidArgument("expectation: need at least 2 samples");
    if (cfg.F.isZero()) return {};
    FormulaSetup s = formulaSetup(cfg, cfg.F.supportMax());
    const double vol = s.domain.boxVolume();
    const std::int64_t nChunks = (nSamples + kChunk - 1) / kChunk;
    std::vector<double> sum(static_cast<std::size_t>(nChunks), 0.0), sumSq(static_cast<std::size_t>(nChunks), 0.0);
    parallelFor(static_cast<std::size_t>(nChunks), [&](std::size_t c) {
        std::int64_t count = std::min(kChunk, nSamples - static_cast<std::int64_t>(c) * kChunk);
        Rng rng(seed, c);
        std::vector<double> x(static_cast<std::size_t>(s.domain.dim()));
        double a = 0, b = 0;
        for (std::int64_t k = 0; k < count; ++k) {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(s.domain.lower[i], s.domain.upper[i]);
            double f = cfg.F(s.h(x));
            if (f == 0) continue;
            double y = f * s.weight(x) * vol;
            a += y;
            b += y * y;
        }
        sum[c] = a;
        sumSq[c] = b;
    });
    double a = 0, b = 0;
    for (std::size_t c = 0; c < sum.size(); ++c) {
        a += sum[c];
        b += sumSq[c];
    }
    const double n = static_cast<double>(nSamples);
    double mean = a / n;
    return {mean, std::sqrt(std::max(b / n - mean * mean, 0.0) / (n - 1))};
}

DensityGrid densityViaFormula(const ExpectationConfig& cfg, const GridParams& grid, std::int64_t nSamples,
                              std::uint64_t seed) {
    cfg.validate();
    FormulaSetup s = formulaSetup(cfg, grid.ellMax);
    return pushforwardDensity(s.h, s.weight, s.domain, nSamples, seed, grid);
}

DensityGrid countingCurve(const DensityGrid& density) {
    density.validate();
    DensityGrid q = density;
    double acc = 0, var = 0;
    for (std::size_t i = 0; i < q.bins(); ++i) {
        if (density.mass[i] < 0) throw InvalidArgument("countingCurve: density must be nonnegative");
        acc += density.mass[i] * density.binWidth;
        var += density.variance[i] * density.binWidth * density.binWidth;
        q.mass[i] = acc;
        q.variance[i] = var;
    }
    return q;
}

double figureEightLength(double x, double y, double z) {
    x = std::max(x, kMinLength);
    y = std::max(y, kMinLength);
    z = std::max(z, kMinLength);
    if (x + y < 60 && z < 60) return 2 * std::acosh(2 * std::cosh(x / 2) * std::cosh(y / 2) + std::cosh(z / 2));
    // log domain, cosh would overflow further out
    auto logCosh = [](double t) { return t + std::log1p(std::exp(-2 * t)) - std::log(2.0); };
    double p = std::log(2.0) + logCosh(x / 2) + logCosh(y / 2), q = logCosh(z / 2);
    double logS = std::max(p, q) + std::log1p(std::exp(-std::abs(p - q)));
    return 2 * (logS + std::log1p(std::sqrt(1 - std::exp(-2 * logS))));
}

UnfoldingReport unfoldingCheck(const TestFunction& F, double ellA, double L, int K) {
    F.validate();
    if (!(ellA > 0) || !(L >= 0)) throw InvalidArgument("unfoldingCheck: need ellA > 0 and L >= 0");
    if (K < 1) throw InvalidArgument("unfoldingCheck: K must be >= 1");
    LoopSpec dual = torusDualLoop();
    auto h = [&](double tau) { return loopLength(dual, torusPoint(ellA, tau, L)); };
    double sup = F.supportMax();
    // symmetric window beyond which h exceeds the support of F
    double T = ellA;
    while (h(T) <= sup || h(-T) <= sup) {
        T *= 2;
        if (T > 1e4) throw ConfigurationError("unfoldingCheck: no finite twist window");
    }
    using boost::math::quadrature::gauss_kronrod;
    // terms with |tau + k l| > T vanish because h > sup there, so they are not evaluated
    auto folded = [&](double tau) {
        double s = 0;
        for (int k = -K; k <= K; ++k) {
            double t = tau + k * ellA;
            if (std::fabs(t) <= T) s += F(h(t));
        }
        return s;
    };
    auto plain = [&](double tau) { return F(h(tau)); };
    UnfoldingReport r;
    r.K = K;
    r.folded = gauss_kronrod<double, 61>::integrate(folded, 0.0, ellA, 12, 1e-12);
    // the real line, split into windows of length ellA so the integrand is resolved
    double acc = 0;
    int pieces = static_cast<int>(std::ceil(T / ellA)) + 1;
    for (int k = -pieces; k < pieces; ++k)
        acc += gauss_kronrod<double, 61>::integrate(plain, k * ellA + 0.25 * ellA, (k + 1) * ellA + 0.25 * ellA, 12,
                                                    1e-12);
    r.unfolded = acc;
    r.difference = std::fabs(r.folded - r.unfolded);
    return r;
}

}  // namespace teichlab
