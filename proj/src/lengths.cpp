#include "teichlab/lengths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "teichlab/errors.hpp"
#include "teichlab/nnls.hpp"
#include "teichlab/rng.hpp"

namespace teichlab {

double loopLength(const LoopSpec& loop, const FNPoint& fn) {
    return traceToLength(holonomyTrace(loop, fn));
}

double loopLogTrace(const LoopSpec& loop, const FNPoint& fn) {
    return holonomyTrace(loop, fn).logAbs;
}

double okaiDualLength(double ellA, double tauA, double L) {
    if (!(ellA > 0)) throw InvalidArgument("okaiDualLength: ellA must be positive");
    if (!(L >= 0)) throw InvalidArgument("okaiDualLength: L must be >= 0");
    double a = logCosh(ellA), b = logCosh(L / 2);
    double m = std::max(a, b);
    double logMean = m + std::log1p(std::exp(-std::fabs(a - b))) - std::numbers::ln2;
    double logC = logCosh(tauA / 2) - logSinhAbs(ellA / 2) + 0.5 * logMean;
    SignedTrace t;
    t.sign = 1;
    t.logAbs = logC + std::numbers::ln2;
    t.value = t.valueValid() ? std::exp(t.logAbs) : HUGE_VAL;
    return traceToLength(t, 0.0);
}

double calibrateTwistOrigin(const LoopSpec& loop, const std::string& curve, const FNPoint& fn,
                            TwistWindow window, double maxAbsTwist) {
    if (!(window.hi > window.lo)) throw InvalidArgument("calibrateTwistOrigin: empty window");
    FNPoint p = fn;
    auto f = [&](double tau) {
        p.setTwist(curve, tau);
        return loopLogTrace(loop, p);
    };
    // Downhill expansion until the middle point is lowest.
    double a = window.lo, b = window.hi, c = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fc = f(c);
    int guard = 0;
    while (!(fc <= fa && fc <= fb)) {
        if (++guard > 200 || std::fabs(a) > maxAbsTwist || std::fabs(b) > maxAbsTwist)
            throw CalibrationFailure("calibrateTwistOrigin: no interior minimum for curve " + curve);
        double w = b - a;
        if (fa < fb) {
            b = c, fb = fc;
            c = a, fc = fa;
            a = c - w;
            fa = f(a);
        } else {
            a = c, fa = fc;
            c = b, fc = fb;
            b = c + w;
            fb = f(b);
        }
    }
    // Golden-section narrowing.
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60 && b - a > 1e-4 * (1 + std::fabs(c)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1, f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2, f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    // Sign bisection on a symmetric difference; exact zero at the center of an even profile.
    double h = std::max(1e-3, b - a);
    auto D = [&](double t) { return f(t + h) - f(t - h); };
    double lo = a - h, hi = b + h;
    double dlo = D(lo), dhi = D(hi);
    int exp = 0;
    while (!(dlo < 0 && dhi > 0)) {
        if (++exp > 60) throw CalibrationFailure("calibrateTwistOrigin: derivative bracket failed");
        lo -= h, hi += h;
        dlo = D(lo), dhi = D(hi);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1 + std::fabs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double dm = D(mid);
        if (dm < 0) lo = mid;
        else if (dm > 0) hi = mid;
        else return mid;
    }
    return 0.5 * (lo + hi);
}

ProbeReport boundaryGrowthProbe(const LoopSpec& loop, const FNPoint& fn, const std::string& curve,
                                const std::vector<double>& grid, double growthThreshold) {
    ProbeReport r;
    if (grid.size() < 2) throw InvalidArgument("boundaryGrowthProbe: grid needs two points");
    if (!loop.surface.hasCurve(curve) || loop.surface.curve(curve).interior)
        throw InvalidArgument("boundaryGrowthProbe: " + curve + " is not a boundary curve");
    FNPoint p = fn;
    for (double v : grid) {
        p.setLength(curve, v);
        r.samples.emplace_back(v, loopLength(loop, p));
    }
    for (size_t i = 1; i < r.samples.size(); ++i) {
        double prev = r.samples[i - 1].second, cur = r.samples[i].second;
        if (cur < prev - 1e-9 * std::max(1.0, std::fabs(prev))) r.monotone = false;
    }
    double span = grid.back() - grid.front();
    r.divergent = r.samples.back().second - r.samples.front().second >= growthThreshold * span;
    return r;
}

namespace {

struct AffineFit {
    double slope = 0, intercept = 0, sup = 0;
    int used = 0, skipped = 0;
};

AffineFit fitRay(const LoopSpec& loop, const FNPoint& base, const std::vector<double>& x0,
                 const std::vector<double>& dir, double t0, double t1, int n) {
    std::vector<double> ts, hs;
    AffineFit out;
    for (int k = 0; k < n; ++k) {
        double t = t0 + (t1 - t0) * k / (n - 1);
        std::vector<double> x(x0.size());
        for (size_t i = 0; i < x.size(); ++i) x[i] = x0[i] + t * dir[i];
        try {
            hs.push_back(loopLength(loop, base.withCoordinates(x)));
            ts.push_back(t);
        } catch (const NonHyperbolicElement&) {
            ++out.skipped;
        }
    }
    out.used = static_cast<int>(ts.size());
    if (out.used < 2) throw NumericFailure("rayAsymptotics: too few hyperbolic samples");
    double mt = 0, mh = 0;
    for (size_t i = 0; i < ts.size(); ++i) mt += ts[i], mh += hs[i];
    mt /= ts.size(), mh /= hs.size();
    double stt = 0, sth = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - mt) * (ts[i] - mt);
        sth += (ts[i] - mt) * (hs[i] - mh);
    }
    out.slope = sth / stt;
    out.intercept = mh - out.slope * mt;
    for (size_t i = 0; i < ts.size(); ++i)
        out.sup = std::max(out.sup, std::fabs(hs[i] - out.slope * ts[i] - out.intercept));
    return out;
}

}  // namespace

RayReport rayAsymptotics(const LoopSpec& loop, const FNPoint& base, std::vector<double> direction,
                         double tMax, int samples) {
    auto x0 = base.coordinates();
    if (direction.size() != x0.size()) throw InvalidArgument("rayAsymptotics: direction has wrong size");
    double nrm = 0;
    for (double d : direction) nrm += d * d;
    nrm = std::sqrt(nrm);
    if (!(nrm > 0)) throw InvalidArgument("rayAsymptotics: zero direction");
    for (double& d : direction) d /= nrm;
    if (!(tMax > 0) || samples < 3) throw InvalidArgument("rayAsymptotics: bad window");
    auto names = base.coordinateNames();
    for (size_t i = 0; i < x0.size(); ++i) {
        if (names[i][0] == 't') continue;
        double end = x0[i] + 2 * tMax * direction[i];
        bool interior = names[i][0] == 'l';
        if ((interior && !(end > 0)) || (!interior && !(end >= 0)))
            throw InvalidArgument("rayAsymptotics: ray leaves the valid region in " + names[i]);
    }
    RayReport r;
    r.direction = direction;
    AffineFit a = fitRay(loop, base, x0, direction, tMax / 2, tMax, samples);
    AffineFit b = fitRay(loop, base, x0, direction, tMax, 2 * tMax, samples);
    r.slope = a.slope;
    r.intercept = a.intercept;
    r.residualSup = a.sup;
    r.slopeDoubled = b.slope;
    r.residualSupDoubled = b.sup;
    r.samples = a.used;
    r.skipped = a.skipped + b.skipped;
    double floor = 1e-9 * (1 + std::fabs(b.slope * 2 * tMax + b.intercept));
    r.stable = b.sup <= 1.1 * a.sup + floor;
    return r;
}

double ExpSumForm::evaluate(const LinearForm& p) const {
    double s = 0;
    for (const auto& t : terms) s += t.coeff * std::exp(t.form[0] * p[0] + t.form[1] * p[1] + t.form[2] * p[2]);
    return s;
}

std::vector<LinearForm> halfIntegerForms(int maxHalf) {
    std::vector<LinearForm> out;
    for (int i = -maxHalf; i <= maxHalf; ++i)
        for (int j = -maxHalf; j <= maxHalf; ++j)
            for (int k = -maxHalf; k <= maxHalf; ++k) out.push_back({i / 2.0, j / 2.0, k / 2.0});
    return out;
}

std::vector<LinearForm> uniformGrid(int n, double lo, double hi, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<LinearForm> out(n);
    for (auto& p : out)
        for (auto& c : p) c = rng.uniform(lo, hi);
    return out;
}

ExpSumForm expSumFit(const LoopSpec& loop, const std::vector<LinearForm>& candidates,
                     const std::vector<LinearForm>& sampleGrid,
                     const std::vector<LinearForm>& heldOutGrid, double tolerance) {
    loop.validate();
    if (loop.incursions.size() != 1 || loop.incursions[0].form != IncursionForm::internal)
        throw InvalidArgument("expSumFit: loop must live in a single pants");
    if (candidates.empty()) throw InvalidArgument("expSumFit: no candidate forms");
    if (sampleGrid.size() < candidates.size())
        throw InvalidArgument("expSumFit: sample grid smaller than the candidate set");
    const auto& P = loop.surface.pants[loop.surface.pantsIndex(loop.incursions[0].pantsId)];
    FNPoint fn;
    for (const auto& c : loop.surface.curves) {
        if (c.interior) fn.interior[c.id] = {1.0, 0.0};
        else fn.boundary[c.id] = 1.0;
    }
    auto target = [&](const LinearForm& p) {
        for (int k = 0; k < 3; ++k) fn.setLength(P.slots[k], p[k]);
        return std::exp(loopLogTrace(loop, fn)) / 2;
    };
    const Eigen::Index m = static_cast<Eigen::Index>(sampleGrid.size());
    const Eigen::Index n = static_cast<Eigen::Index>(candidates.size());
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& p = sampleGrid[i];
        double tv = target(p);
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& f = candidates[j];
            A(i, j) = std::exp(f[0] * p[0] + f[1] * p[1] + f[2] * p[2]) / tv;
        }
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < n; ++j) A.col(j) /= scale[j];
    Eigen::VectorXd c = nnls(A, b);
    double cmax = c.maxCoeff();
    std::vector<int> support;
    for (Eigen::Index j = 0; j < n; ++j)
        if (c[j] > 1e-9 * cmax) support.push_back(static_cast<int>(j));
    // Clean refit on the support; keep the constrained solution if it turns negative.
    Eigen::MatrixXd As(m, static_cast<Eigen::Index>(support.size()));
    for (size_t k = 0; k < support.size(); ++k) As.col(static_cast<Eigen::Index>(k)) = A.col(support[k]);
    Eigen::VectorXd cs = As.colPivHouseholderQr().solve(b);
    bool positive = (cs.array() > 0).all();
    ExpSumForm out;
    for (size_t k = 0; k < support.size(); ++k) {
        int j = support[k];
        double v = positive ? cs[static_cast<Eigen::Index>(k)] : c[j];
        out.terms.push_back({v / scale[j], candidates[j]});
    }
    double worst = 0;
    for (const auto& p : heldOutGrid) {
        double tv = target(p);
        worst = std::max(worst, std::fabs(out.evaluate(p) - tv) / tv);
    }
    out.heldOutResidual = worst;
    if (worst > tolerance)
        throw FitFailure("expSumFit: held-out relative residual " + std::to_string(worst) +
                         " exceeds " + std::to_string(tolerance));
    return out;
}

}  // namespace teichlab
