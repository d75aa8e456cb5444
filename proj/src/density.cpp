#include "teichlab/density.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "teichlab/errors.hpp"

namespace teichlab {

DensityGrid DensityGrid::make(double ellMin, double ellMax, double binWidth) {
    if (!(binWidth > 0) || !std::isfinite(binWidth)) throw InvalidArgument("grid: binWidth must be > 0");
    if (!std::isfinite(ellMin) || !std::isfinite(ellMax) || !(ellMax > ellMin))
        throw InvalidArgument("grid: need finite ellMin < ellMax");
    DensityGrid g;
    g.ellMin = ellMin;
    g.ellMax = ellMax;
    g.binWidth = binWidth;
    // tolerate ranges that are a whole number of bins up to rounding
    double n = std::ceil((ellMax - ellMin) / binWidth - 1e-9);
    if (n > 5e7) throw InvalidArgument("grid: too many bins");
    g.mass.assign(static_cast<std::size_t>(n), 0.0);
    g.variance.assign(g.mass.size(), 0.0);
    return g;
}

DensityGrid DensityGrid::make(const GridParams& p) { return make(p.ellMin, p.ellMax, p.binWidth); }

DensityGrid DensityGrid::sample(const GridParams& p, const std::function<double(double)>& g) {
    DensityGrid d = make(p);
    for (std::size_t i = 0; i < d.bins(); ++i) d.mass[i] = g(d.center(i));
    return d;
}

double DensityGrid::stderrAt(std::size_t i) const { return std::sqrt(std::max(variance[i], 0.0)); }

long DensityGrid::binOf(double ell) const {
    if (!(ell >= ellMin)) return -1;
    double k = std::floor((ell - ellMin) / binWidth);
    if (k >= static_cast<double>(bins())) return -1;
    return static_cast<long>(k);
}

double DensityGrid::valueAt(double ell) const {
    if (bins() == 0 || !(ell >= ellMin) || !(ell <= lo(bins()))) return 0;
    double s = (ell - ellMin) / binWidth - 0.5;
    if (s <= 0) return mass.front();
    double k = std::floor(s);
    std::size_t i = static_cast<std::size_t>(k);
    if (i + 1 >= bins()) return mass.back();
    double f = s - k;
    return mass[i] * (1 - f) + mass[i + 1] * f;
}

double DensityGrid::integrate(const std::function<double(double)>& g, double* stderrOut) const {
    double sum = 0, var = 0;
    for (std::size_t i = 0; i < bins(); ++i) {
        double w = g(center(i)) * binWidth;
        sum += w * mass[i];
        var += w * w * variance[i];
    }
    if (stderrOut) *stderrOut = std::sqrt(var);
    return sum;
}

double DensityGrid::totalMass() const {
    return integrate([](double) { return 1.0; });
}

void DensityGrid::validate() const {
    if (!(binWidth > 0)) throw InvalidArgument("grid: binWidth must be > 0");
    if (mass.size() != variance.size()) throw InvalidArgument("grid: mass/variance size mismatch");
    double n = std::ceil((ellMax - ellMin) / binWidth - 1e-9);
    if (static_cast<double>(mass.size()) != n) throw InvalidArgument("grid: bin count does not match range");
}

bool sameLayout(const DensityGrid& a, const DensityGrid& b) {
    return a.bins() == b.bins() && std::fabs(a.ellMin - b.ellMin) <= 1e-12 * (1 + std::fabs(a.ellMin)) &&
           std::fabs(a.binWidth - b.binWidth) <= 1e-12 * a.binWidth;
}

DensityGrid merge(const DensityGrid& a, const DensityGrid& b) {
    if (!sameLayout(a, b)) throw InvalidArgument("merge: grids differ in layout");
    double na = static_cast<double>(std::max<std::int64_t>(a.totalSamples, 1));
    double nb = static_cast<double>(std::max<std::int64_t>(b.totalSamples, 1));
    double wa = na / (na + nb), wb = nb / (na + nb);
    DensityGrid r = a;
    r.totalSamples = a.totalSamples + b.totalSamples;
    for (std::size_t i = 0; i < r.bins(); ++i) {
        r.mass[i] = wa * a.mass[i] + wb * b.mass[i];
        r.variance[i] = wa * wa * a.variance[i] + wb * wb * b.variance[i];
    }
    return r;
}

DensityGrid resample(const DensityGrid& g, const GridParams& p) {
    DensityGrid r = DensityGrid::make(p);
    r.totalSamples = g.totalSamples;
    for (std::size_t i = 0; i < r.bins(); ++i) {
        double c = r.center(i);
        r.mass[i] = g.valueAt(c);
        long k = g.binOf(c);
        r.variance[i] = k >= 0 ? g.variance[static_cast<std::size_t>(k)] : 0.0;
    }
    return r;
}

L1Comparison compareL1(const DensityGrid& a, const DensityGrid& b) {
    if (!sameLayout(a, b)) throw InvalidArgument("compareL1: grids differ in layout");
    L1Comparison c;
    for (std::size_t i = 0; i < a.bins(); ++i) {
        c.distance += std::fabs(a.mass[i] - b.mass[i]) * a.binWidth;
        c.tolerance += 3 * std::sqrt(a.variance[i] + b.variance[i]) * a.binWidth;
    }
    return c;
}

void writeCsv(std::ostream& os, const DensityGrid& g) {
    os << "ell_lo,ell_hi,density,stderr\n";
    char buf[128];
    for (std::size_t i = 0; i < g.bins(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g.lo(i), g.hi(i), g.mass[i], g.stderrAt(i));
        os << buf;
    }
}

}  // namespace teichlab
