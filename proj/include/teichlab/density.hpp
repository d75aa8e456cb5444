#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace teichlab {

struct GridParams {
    double ellMin = 0;
    double ellMax = 10;
    double binWidth = 0.05;
};

// Per-bin density w.r.t. d(ell). variance is the variance of each bin estimate
// (squared standard error); zero for deterministic results.
struct DensityGrid {
    double ellMin = 0, ellMax = 0, binWidth = 0.05;
    std::vector<double> mass;
    std::vector<double> variance;
    std::int64_t totalSamples = 0;

    static DensityGrid make(const GridParams& p);
    static DensityGrid make(double ellMin, double ellMax, double binWidth);
    // Grid whose bin-center values are g(center).
    static DensityGrid sample(const GridParams& p, const std::function<double(double)>& g);

    std::size_t bins() const { return mass.size(); }
    double lo(std::size_t i) const { return ellMin + binWidth * static_cast<double>(i); }
    double hi(std::size_t i) const { return lo(i) + binWidth; }
    double center(std::size_t i) const { return lo(i) + binWidth / 2; }
    double stderrAt(std::size_t i) const;
    // Bin index containing ell, or -1 outside.
    long binOf(double ell) const;
    // Linear interpolation between bin centers, 0 outside [ellMin, ellMax].
    double valueAt(double ell) const;
    // Midpoint-rule integral of g * density, with its standard error.
    double integrate(const std::function<double(double)>& g, double* stderrOut = nullptr) const;
    double totalMass() const;
    void validate() const;
};

bool sameLayout(const DensityGrid& a, const DensityGrid& b);

// Sample-count weighted combination of two independent estimates on the same layout.
DensityGrid merge(const DensityGrid& a, const DensityGrid& b);

// Resample onto another layout by linear interpolation of bin-center values.
DensityGrid resample(const DensityGrid& g, const GridParams& p);

// L1 distance on the common layout, and 3 x combined standard error of that distance.
struct L1Comparison {
    double distance = 0;
    double tolerance = 0;  // 3 * sum sqrt(v1 + v2) * binWidth
    bool pass() const { return distance <= tolerance; }
};
L1Comparison compareL1(const DensityGrid& a, const DensityGrid& b);

// CSV with columns ell_lo, ell_hi, density, stderr (17 significant digits).
void writeCsv(std::ostream& os, const DensityGrid& g);

}  // namespace teichlab
