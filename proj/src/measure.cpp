#include "teichlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

// Boost 1.74's pchip header calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "teichlab/errors.hpp"
#include "teichlab/parallel.hpp"
#include "teichlab/rng.hpp"

namespace teichlab {

namespace {

constexpr std::int64_t kChunk = 1 << 15;
constexpr std::size_t kChunksPerBatch = 64;

}  // namespace

WeightSpec WeightSpec::constant(int dim) {
    WeightSpec w;
    w.perCoordinate.assign(static_cast<std::size_t>(dim), {});
    return w;
}

WeightSpec WeightSpec::monomials(const std::vector<int>& degrees) {
    WeightSpec w;
    for (int k : degrees) {
        if (k < 0) throw InvalidArgument("weight degree must be >= 0");
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        c.back() = 1;
        w.perCoordinate.push_back(c);
    }
    return w;
}

int WeightSpec::degree(int i) const {
    const auto& c = perCoordinate.at(static_cast<std::size_t>(i));
    int d = static_cast<int>(c.size()) - 1;
    while (d > 0 && c[static_cast<std::size_t>(d)] == 0) --d;
    return std::max(d, 0);
}

double WeightSpec::factor(int i, double x) const {
    const auto& c = perCoordinate[static_cast<std::size_t>(i)];
    if (c.empty()) return 1;
    double v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

double WeightSpec::extraFactor(std::span<const double> x) const {
    if (extra == Extra::one) return 1;
    double s = 0;
    for (int i : expNegCoords) s += x[static_cast<std::size_t>(i)];
    return std::exp(-s);
}

double WeightSpec::operator()(std::span<const double> x) const {
    double v = extraFactor(x);
    for (int i = 0; i < dim(); ++i) v *= factor(i, x[static_cast<std::size_t>(i)]);
    return v;
}

void WeightSpec::validate(int d) const {
    if (dim() != d) throw ConfigurationError("weights: expected " + std::to_string(d) + " factors");
    for (const auto& c : perCoordinate)
        for (double v : c)
            if (!std::isfinite(v)) throw ConfigurationError("weights: non-finite coefficient");
    for (int i : expNegCoords)
        if (i < 0 || i >= d) throw ConfigurationError("weights: expNegSum coordinate out of range");
    if (extra == Extra::expNegSum && expNegCoords.empty())
        throw ConfigurationError("weights: expNegSum needs designated coordinates");
}

DomainSpec DomainSpec::box(const std::vector<double>& lower, const std::vector<double>& upper) {
    DomainSpec d;
    d.lower = lower;
    d.upper = upper;
    return d;
}

bool DomainSpec::contains(std::span<const double> x) const {
    for (int i = 0; i < dim(); ++i) {
        double v = x[static_cast<std::size_t>(i)];
        if (v < lower[static_cast<std::size_t>(i)] || v > upper[static_cast<std::size_t>(i)]) return false;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double s = 0;
        for (int i = 0; i < dim(); ++i) s += rows[r][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        if (s > rhs[r]) return false;
    }
    return true;
}

bool DomainSpec::bounded() const {
    for (int i = 0; i < dim(); ++i)
        if (!std::isfinite(lower[static_cast<std::size_t>(i)]) || !std::isfinite(upper[static_cast<std::size_t>(i)]))
            return false;
    return true;
}

double DomainSpec::boxVolume() const {
    double v = 1;
    for (int i = 0; i < dim(); ++i) v *= upper[static_cast<std::size_t>(i)] - lower[static_cast<std::size_t>(i)];
    return v;
}

void DomainSpec::validate() const {
    if (lower.empty() || lower.size() != upper.size()) throw ConfigurationError("domain: bounds size mismatch");
    for (int i = 0; i < dim(); ++i) {
        double lo = lower[static_cast<std::size_t>(i)], hi = upper[static_cast<std::size_t>(i)];
        if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
            throw ConfigurationError("domain: need lower < upper for coordinate " + std::to_string(i));
    }
    if (rows.size() != rhs.size()) throw ConfigurationError("domain: constraint rows/rhs mismatch");
    if (!strict.empty() && strict.size() != rows.size()) throw ConfigurationError("domain: strict flags mismatch");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != dim()) throw ConfigurationError("domain: constraint row has wrong length");
    if (rows.empty()) return;
    // nonempty interior: some sampled point satisfies all constraints
    Rng rng(12345);
    std::vector<double> x(static_cast<std::size_t>(dim()));
    for (int k = 0; k < 4096; ++k) {
        for (int i = 0; i < dim(); ++i) {
            double lo = lower[static_cast<std::size_t>(i)], hi = upper[static_cast<std::size_t>(i)];
            if (!std::isfinite(lo)) lo = std::isfinite(hi) ? hi - 100 : -100;
            if (!std::isfinite(hi)) hi = lo + 100;
            x[static_cast<std::size_t>(i)] = rng.uniform(lo, hi);
        }
        if (contains(x)) return;
    }
    throw ConfigurationError("domain: no interior point found by sampling");
}

DensityGrid pushforwardDensity(const Evaluator& h, const WeightSpec& w, const DomainSpec& dom,
                               std::int64_t nSamples, std::uint64_t seed, const GridParams& grid) {
    w.validate(dom.dim());
    return pushforwardDensity(h, Evaluator([&w](std::span<const double> x) { return w(x); }), dom, nSamples, seed,
                              grid);
}

DensityGrid pushforwardDensity(const Evaluator& h, const Evaluator& w, const DomainSpec& dom,
                               std::int64_t nSamples, std::uint64_t seed, const GridParams& grid) {
    dom.validate();
    if (!dom.bounded()) throw ConfigurationError("pushforward: domain needs finite bounds (truncation radius)");
    if (nSamples < 2) throw InvalidArgument("pushforward: need at least 2 samples");
    DensityGrid out = DensityGrid::make(grid);
    const std::size_t nb = out.bins();
    const double vol = dom.boxVolume();
    const std::int64_t nChunks = (nSamples + kChunk - 1) / kChunk;
    std::vector<double> S(nb, 0.0), SS(nb, 0.0);
    std::int64_t accepted = 0;
    for (std::int64_t first = 0; first < nChunks; first += static_cast<std::int64_t>(kChunksPerBatch)) {
        std::size_t batch = static_cast<std::size_t>(std::min<std::int64_t>(kChunksPerBatch, nChunks - first));
        std::vector<std::vector<double>> cs(batch), css(batch);
        std::vector<std::int64_t> acc(batch, 0);
        parallelFor(batch, [&](std::size_t b) {
            std::int64_t chunk = first + static_cast<std::int64_t>(b);
            std::int64_t count = std::min(kChunk, nSamples - chunk * kChunk);
            Rng rng(seed, static_cast<std::uint64_t>(chunk));
            auto& s = cs[b];
            auto& ss = css[b];
            s.assign(nb, 0.0);
            ss.assign(nb, 0.0);
            std::vector<double> x(static_cast<std::size_t>(dom.dim()));
            for (std::int64_t k = 0; k < count; ++k) {
                for (int i = 0; i < dom.dim(); ++i)
                    x[static_cast<std::size_t>(i)] =
                        rng.uniform(dom.lower[static_cast<std::size_t>(i)], dom.upper[static_cast<std::size_t>(i)]);
                if (!dom.contains(x)) continue;
                double val;
                try {
                    val = h(x);
                } catch (const NonHyperbolicElement&) {
                    continue;  // measure-zero degenerate points
                }
                if (!std::isfinite(val)) continue;
                ++acc[b];
                long bin = out.binOf(val);
                if (bin < 0) continue;
                double y = w(x) * vol;
                s[static_cast<std::size_t>(bin)] += y;
                ss[static_cast<std::size_t>(bin)] += y * y;
            }
        });
        for (std::size_t b = 0; b < batch; ++b) {
            accepted += acc[b];
            for (std::size_t i = 0; i < nb; ++i) {
                S[i] += cs[b][i];
                SS[i] += css[b][i];
            }
        }
    }
    if (accepted == 0) throw EmptyDensity("pushforward: no accepted samples");
    const double n = static_cast<double>(nSamples), bw = out.binWidth;
    for (std::size_t i = 0; i < nb; ++i) {
        double m1 = S[i] / n, m2 = SS[i] / n;
        out.mass[i] = m1 / bw;
        out.variance[i] = std::max(m2 - m1 * m1, 0.0) / (n - 1) / (bw * bw);
    }
    out.totalSamples = nSamples;
    return out;
}

namespace {

double clampStep(double x, double lo, double hi, double& minus, double& plus) {
    double step = 1e-5 * std::max(1.0, std::fabs(x));
    plus = std::min(step, hi - x);
    minus = std::min(step, x - lo);
    return step;
}

// d/dt of g at t by central differences with the step clipped to [lo, hi].
double derivative(const std::function<double(double)>& g, double t, double lo, double hi, double gt) {
    double minus, plus;
    clampStep(t, lo, hi, minus, plus);
    if (minus > 0 && plus > 0) return (g(t + plus) - g(t - minus)) / (plus + minus);
    if (plus > 0) return (g(t + plus) - gt) / plus;
    if (minus > 0) return (gt - g(t - minus)) / minus;
    throw NumericFailure("derivative: empty interval");
}

// Root of g(t) = target on [a, b] where s * (g - target) changes sign from - to +.
// Safeguarded secant from the guess t0, tolerance 1e-12.
double solveBracketed(const std::function<double(double)>& g, double target, double a, double b, double gaRaw,
                      double gbRaw, int s, double t0) {
    double ga = s * (gaRaw - target), gb = s * (gbRaw - target);
    if (ga == 0) return a;
    if (gb == 0) return b;
    if (!(ga < 0 && gb > 0)) throw NumericFailure("solveBracketed: root not bracketed");
    double t = (t0 > a && t0 < b) ? t0 : 0.5 * (a + b);
    double tPrev = a, fPrev = ga;
    for (int it = 0; it < 200; ++it) {
        double f = s * (g(t) - target);
        if (f == 0 || std::fabs(f) <= 1e-12 * std::max(1.0, std::fabs(target))) return t;
        if (f < 0) {
            a = t;
            ga = f;
        } else {
            b = t;
            gb = f;
        }
        if (b - a <= 1e-12 * std::max(1.0, std::fabs(t))) return 0.5 * (a + b);
        double next = (f != fPrev) ? t - f * (t - tPrev) / (f - fPrev) : 0.5 * (a + b);
        // fall back to bisection when the secant leaves the bracket or stalls
        if (!(next > a && next < b) || it % 8 == 7) next = 0.5 * (a + b);
        tPrev = t;
        fPrev = f;
        t = next;
    }
    return t;
}

}  // namespace

int choosePivot(const Evaluator& h, const DomainSpec& dom, std::uint64_t seed, int samples) {
    dom.validate();
    if (!dom.bounded()) throw ConfigurationError("choosePivot: domain needs finite bounds");
    Rng rng(seed, 0xfeed);
    std::vector<double> mean(static_cast<std::size_t>(dom.dim()), 0.0);
    std::vector<double> x(static_cast<std::size_t>(dom.dim()));
    int used = 0;
    for (int k = 0; k < samples * 4 && used < samples; ++k) {
        for (int i = 0; i < dom.dim(); ++i)
            x[static_cast<std::size_t>(i)] =
                rng.uniform(dom.lower[static_cast<std::size_t>(i)], dom.upper[static_cast<std::size_t>(i)]);
        if (!dom.contains(x)) continue;
        ++used;
        double hx = h(x);
        for (int i = 0; i < dom.dim(); ++i) {
            auto g = [&](double t) {
                auto y = x;
                y[static_cast<std::size_t>(i)] = t;
                return h(y);
            };
            mean[static_cast<std::size_t>(i)] += std::fabs(derivative(
                g, x[static_cast<std::size_t>(i)], dom.lower[static_cast<std::size_t>(i)],
                dom.upper[static_cast<std::size_t>(i)], hx));
        }
    }
    if (used == 0) throw EmptyDensity("choosePivot: no interior samples");
    int best = 0;
    for (int i = 1; i < dom.dim(); ++i)
        if (mean[static_cast<std::size_t>(i)] >= mean[static_cast<std::size_t>(best)] * (1 - 1e-12)) best = i;
    return best;
}

DensityGrid disintegrateDensity(const Evaluator& h, const WeightSpec& w, const DomainSpec& dom, int pivot,
                                const GridParams& grid, std::int64_t innerSamples, std::uint64_t seed) {
    w.validate(dom.dim());
    return disintegrateDensity(h, Evaluator([&w](std::span<const double> x) { return w(x); }), dom, pivot, grid,
                               innerSamples, seed);
}

DensityGrid disintegrateDensity(const Evaluator& h, const Evaluator& w, const DomainSpec& dom, int pivot,
                                const GridParams& grid, std::int64_t innerSamples, std::uint64_t seed) {
    dom.validate();
    const int d = dom.dim();
    if (pivot < 0 || pivot >= d) throw InvalidArgument("disintegrate: pivot out of range");
    const std::size_t ip = static_cast<std::size_t>(pivot);
    for (int i = 0; i < d; ++i)
        if (i != pivot && (!std::isfinite(dom.lower[static_cast<std::size_t>(i)]) ||
                           !std::isfinite(dom.upper[static_cast<std::size_t>(i)])))
            throw ConfigurationError("disintegrate: non-pivot coordinates need finite bounds");
    if (!std::isfinite(dom.lower[ip])) throw ConfigurationError("disintegrate: pivot needs a finite lower bound");
    if (innerSamples < 2) throw InvalidArgument("disintegrate: need at least 2 inner samples");

    DensityGrid out = DensityGrid::make(grid);
    const std::size_t nb = out.bins();
    const double gridTop = out.hi(nb - 1);
    double volOther = 1;
    for (int i = 0; i < d; ++i)
        if (i != pivot) volOther *= dom.upper[static_cast<std::size_t>(i)] - dom.lower[static_cast<std::size_t>(i)];

    auto drawOther = [&](Rng& rng, std::vector<double>& x) {
        for (int i = 0; i < d; ++i)
            if (i != pivot)
                x[static_cast<std::size_t>(i)] =
                    rng.uniform(dom.lower[static_cast<std::size_t>(i)], dom.upper[static_cast<std::size_t>(i)]);
    };
    // effective upper end of the pivot range for this slice
    auto pivotTop = [&](const std::function<double(double)>& g) {
        double hi = dom.upper[ip];
        if (std::isfinite(hi)) return hi;
        double lo = dom.lower[ip];
        for (double r = 1; r <= 1e4; r *= 2)
            if (g(lo + r) > gridTop) return lo + r;
        return lo + 1e4;
    };

    // monotonicity in the pivot on a pre-sample
    int sign = 0;
    {
        Rng rng(seed, 0xabcdef);
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int k = 0; k < 256; ++k) {
            drawOther(rng, x);
            auto g = [&](double t) {
                x[ip] = t;
                return h(x);
            };
            double lo = dom.lower[ip], hi = pivotTop(g);
            double t = rng.uniform(lo, hi);
            // slices that never reach the grid do not matter (and may be numerically flat)
            double gLo = g(lo), gHi = g(hi);
            if (std::min(gLo, gHi) >= gridTop || std::max(gLo, gHi) <= out.ellMin) continue;
            double delta = 1e-3 * (hi - lo);
            double a = std::max(lo, t - delta), b = std::min(hi, t + delta);
            double diff = g(b) - g(a);
            int s = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
            if (s == 0 || (sign != 0 && s != sign))
                throw AssumptionViolated("disintegrate: h is not strictly monotone in pivot coordinate " +
                                         std::to_string(pivot));
            sign = s;
        }
        if (sign == 0) throw EmptyDensity("disintegrate: no pre-sample slice reaches the grid");
    }

    // small units: each inner sample is expensive, so spread them finely over workers
    const std::int64_t sub = 64;
    const std::int64_t nUnits = (innerSamples + sub - 1) / sub;
    std::vector<double> S(nb, 0.0), SS(nb, 0.0);
    for (std::int64_t first = 0; first < nUnits; first += 256) {
        std::size_t batch = static_cast<std::size_t>(std::min<std::int64_t>(256, nUnits - first));
        std::vector<std::vector<double>> cs(batch), css(batch);
        parallelFor(batch, [&](std::size_t b) {
            std::int64_t unit = first + static_cast<std::int64_t>(b);
            std::int64_t count = std::min(sub, innerSamples - unit * sub);
            Rng rng(seed, static_cast<std::uint64_t>(unit));
            auto& s = cs[b];
            auto& ss = css[b];
            s.assign(nb, 0.0);
            ss.assign(nb, 0.0);
            std::vector<double> x(static_cast<std::size_t>(d));
            for (std::int64_t k = 0; k < count; ++k) {
                drawOther(rng, x);
                auto g = [&](double t) {
                    x[ip] = t;
                    return h(x);
                };
                double lo = dom.lower[ip], hi = pivotTop(g);
                double gLo = g(lo), gHi = g(hi);
                double vMin = std::min(gLo, gHi), vMax = std::max(gLo, gHi);
                // bins in the order the root moves away from the start of the bracket
                long first = out.binOf(std::max(vMin, out.ellMin));
                if (first < 0) {
                    if (vMin < out.ellMin) first = 0;
                    else continue;
                }
                double tPrev = sign > 0 ? lo : hi, gPrev = sign > 0 ? gLo : gHi, dPrev = 0;
                auto visit = [&](std::size_t bin) {
                    double ell = out.center(bin);
                    if (!(ell > vMin && ell < vMax)) return;
                    double guess = dPrev != 0 ? tPrev + (ell - gPrev) / dPrev : -HUGE_VAL;
                    double a = sign > 0 ? tPrev : lo, bb = sign > 0 ? hi : tPrev;
                    double ga = sign > 0 ? gPrev : gLo, gb = sign > 0 ? gHi : gPrev;
                    double t = solveBracketed(g, ell, a, bb, ga, gb, sign, guess);
                    double gt = g(t);
                    double dg = derivative(g, t, lo, hi, gt);
                    tPrev = t;
                    gPrev = gt;
                    dPrev = dg;
                    if (dg == 0 || !std::isfinite(dg)) return;
                    x[ip] = t;
                    if (!dom.contains(x)) return;
                    double y = w(x) * volOther / std::fabs(dg);
                    s[bin] += y;
                    ss[bin] += y * y;
                };
                for (std::size_t bin = static_cast<std::size_t>(first); bin < nb; ++bin) {
                    if (out.center(bin) >= vMax) break;
                    visit(bin);
                }
            }
        });
        for (std::size_t b = 0; b < batch; ++b)
            for (std::size_t i = 0; i < nb; ++i) {
                S[i] += cs[b][i];
                SS[i] += css[b][i];
            }
    }
    const double n = static_cast<double>(innerSamples);
    for (std::size_t i = 0; i < nb; ++i) {
        double m1 = S[i] / n, m2 = SS[i] / n;
        out.mass[i] = m1;
        out.variance[i] = std::max(m2 - m1 * m1, 0.0) / (n - 1);
    }
    out.totalSamples = innerSamples;
    return out;
}

double pseudoLength(double ell) {
    double a = std::fabs(ell);
    return a + 2 * std::log1p(std::exp(-a));
}

double pseudoLengthInverse(double u) {
    constexpr double kBase = 2 * std::numbers::ln2;
    if (u < kBase) throw InvalidArgument("pseudoLengthInverse: u < 2 log 2");
    // l = u + 2 log((1 + sqrt(1 - 4 e^{-u})) / 2)
    double r = std::sqrt(-std::expm1(kBase - u));
    return u + 2 * std::log((1 + r) / 2);
}

DensityGrid pseudoLengthTransform(const DensityGrid& g, TransformDirection dir) {
    g.validate();
    if (g.ellMin < 0) throw InvalidArgument("pseudoLengthTransform: grid must be supported on ell >= 0");
    if (dir == TransformDirection::inverse && g.ellMin < 2 * std::numbers::ln2 - 1e-12)
        throw InvalidArgument("pseudoLengthTransform: inverse needs ellMin >= 2 log 2");
    const std::size_t n = g.bins();
    std::vector<double> edges(n + 1), cdf(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) edges[i] = g.lo(i);
    for (std::size_t i = 0; i < n; ++i) cdf[i + 1] = cdf[i] + std::max(g.mass[i], 0.0) * g.binWidth;
    double total = cdf.back();
    auto xs = edges;
    auto ys = cdf;
    boost::math::interpolators::pchip<std::vector<double>> C(std::move(xs), std::move(ys));
    auto F = [&](double t) {
        if (t <= edges.front()) return 0.0;
        if (t >= edges.back()) return total;
        return C(t);
    };
    auto map = [&](double t) {
        double lo = std::max(t, 2 * std::numbers::ln2);
        return dir == TransformDirection::forward ? pseudoLength(t) : pseudoLengthInverse(lo);
    };
    auto back = [&](double t) {
        return dir == TransformDirection::forward ? pseudoLengthInverse(std::max(t, 2 * std::numbers::ln2))
                                                  : pseudoLength(t);
    };
    double top = edges.back();
    DensityGrid r = DensityGrid::make(map(g.ellMin), map(top), g.binWidth);
    r.totalSamples = g.totalSamples;
    double prev = F(back(r.lo(0)));
    for (std::size_t i = 0; i < r.bins(); ++i) {
        double next = F(back(std::min(r.hi(i), map(top))));
        r.mass[i] = std::max(next - prev, 0.0) / r.binWidth;
        prev = next;
        // error bars follow the density through the Jacobian of the map
        double c = back(r.center(i));
        long k = g.binOf(c);
        if (k >= 0) {
            double jac = dir == TransformDirection::forward ? std::tanh(c / 2) : 1 / std::tanh(r.center(i) / 2);
            double v = g.variance[static_cast<std::size_t>(k)];
            r.variance[i] = jac > 0 ? v / (jac * jac) : v;
        }
    }
    return r;
}

DensityGrid opP(const DensityGrid& in) {
    in.validate();
    if (in.ellMin < -1e-12) throw InvalidArgument("opP: grid must start at ell >= 0");
    DensityGrid g = in;
    if (in.ellMin > 1e-12) {
        double shift = in.ellMin / in.binWidth;
        if (std::fabs(shift - std::round(shift)) > 1e-9)
            throw InvalidArgument("opP: ellMin must be a multiple of binWidth for zero padding");
        std::size_t pad = static_cast<std::size_t>(std::llround(shift));
        g.ellMin = 0;
        g.mass.insert(g.mass.begin(), pad, 0.0);
        g.variance.insert(g.variance.begin(), pad, 0.0);
    }
    const std::size_t n = g.bins();
    const double bw = g.binWidth;
    DensityGrid p = g;
    if (n == 0) return p;
    double g0 = n > 1 ? 1.5 * g.mass[0] - 0.5 * g.mass[1] : g.mass[0];
    double acc = (g0 + g.mass[0]) / 2 * (bw / 2);
    p.mass[0] = acc;
    // coefficients of the first two samples in P(c_k), for the variance
    double c0 = n > 1 ? 0.625 * bw : 0.5 * bw, c1 = n > 1 ? -0.125 * bw : 0;
    p.variance[0] = c0 * c0 * g.variance[0] + (n > 1 ? c1 * c1 * g.variance[1] : 0);
    double interior = 0;  // sum of bw^2 var_j over fully covered samples
    for (std::size_t k = 1; k < n; ++k) {
        acc += (g.mass[k - 1] + g.mass[k]) / 2 * bw;
        p.mass[k] = acc;
        double a0 = c0 + 0.5 * bw, a1 = c1 + (k >= 2 ? bw : 0.5 * bw);
        if (k >= 3) interior += bw * bw * g.variance[k - 1];
        double v = a0 * a0 * g.variance[0] + 0.25 * bw * bw * g.variance[k] + interior;
        if (k >= 2) v += a1 * a1 * g.variance[1];
        else v = a0 * a0 * g.variance[0] + (c1 + 0.5 * bw) * (c1 + 0.5 * bw) * g.variance[1];
        p.variance[k] = v;
    }
    return p;
}

DensityGrid opL(const DensityGrid& in) {
    DensityGrid p = opP(in);
    DensityGrid r = p;
    std::size_t pad = p.bins() - in.bins();
    for (std::size_t k = 0; k < r.bins(); ++k) {
        double gv = k < pad ? 0.0 : in.mass[k - pad];
        double vv = k < pad ? 0.0 : in.variance[k - pad];
        r.mass[k] = gv - p.mass[k];
        r.variance[k] = vv + p.variance[k];
    }
    return r;
}

double linearConvOracle(const std::vector<int>& degrees, double ell) {
    if (degrees.empty() || degrees.size() > 10) throw InvalidArgument("linearConvOracle: need 1..10 degrees");
    int sum = 0;
    double logCoef = 0;
    for (int k : degrees) {
        if (k < 0) throw InvalidArgument("linearConvOracle: degrees must be >= 0");
        sum += k;
        logCoef += std::lgamma(k + 1.0);
    }
    int n = static_cast<int>(degrees.size());
    int power = sum + n - 1;
    if (ell < 0) return 0;
    if (ell == 0) return power == 0 ? 1.0 : 0.0;
    return std::exp(power * std::log(ell) + logCoef - std::lgamma(sum + n + 0.0));
}

}  // namespace teichlab
