#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "teichlab/density.hpp"

namespace teichlab {

using Evaluator = std::function<double(std::span<const double>)>;

// Product of univariate polynomial factors f_i(x_i) times an optional bounded factor.
struct WeightSpec {
    enum class Extra { one, expNegSum };
    // coefficients c0, c1, ... of f_i; an empty list means f_i = 1
    std::vector<std::vector<double>> perCoordinate;
    Extra extra = Extra::one;
    std::vector<int> expNegCoords;  // coordinates entering e^{-(s_1 + ... + s_m)}

    static WeightSpec constant(int dim);
    // f_i(x) = x^{K_i}
    static WeightSpec monomials(const std::vector<int>& degrees);

    int dim() const { return static_cast<int>(perCoordinate.size()); }
    int degree(int i) const;
    double factor(int i, double x) const;
    double extraFactor(std::span<const double> x) const;
    double operator()(std::span<const double> x) const;
    void validate(int dim) const;
};

struct DomainSpec {
    std::vector<double> lower, upper;  // lower may be -inf (twists), upper may be +inf
    // rows . x <= rhs (strict flags only documented; boundaries have measure zero)
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<bool> strict;
    bool cone = false;

    static DomainSpec box(const std::vector<double>& lower, const std::vector<double>& upper);
    int dim() const { return static_cast<int>(lower.size()); }
    bool contains(std::span<const double> x) const;
    bool bounded() const;
    double boxVolume() const;
    // Throws ConfigurationError for malformed specs; checks the interior is nonempty by sampling.
    void validate() const;
};

// Monte Carlo histogram of h under w dx on dom (uniform sampling of the bounding box).
// Streams are split by chunk so the result only depends on (seed, nSamples).
DensityGrid pushforwardDensity(const Evaluator& h, const WeightSpec& w, const DomainSpec& dom,
                               std::int64_t nSamples, std::uint64_t seed, const GridParams& grid);
// Same with an arbitrary weight function.
DensityGrid pushforwardDensity(const Evaluator& h, const Evaluator& weight, const DomainSpec& dom,
                               std::int64_t nSamples, std::uint64_t seed, const GridParams& grid);

// Level-set formula: solve h = ell for the pivot coordinate and integrate the
// remaining coordinates by Monte Carlo with common inner samples for all bins.
DensityGrid disintegrateDensity(const Evaluator& h, const WeightSpec& w, const DomainSpec& dom, int pivot,
                                const GridParams& grid, std::int64_t innerSamples, std::uint64_t seed);
DensityGrid disintegrateDensity(const Evaluator& h, const Evaluator& weight, const DomainSpec& dom, int pivot,
                                const GridParams& grid, std::int64_t innerSamples, std::uint64_t seed);

// Coordinate with the largest mean |dh/dx_i| on a pre-sample; ties go to the highest index.
int choosePivot(const Evaluator& h, const DomainSpec& dom, std::uint64_t seed, int samples = 256);

// u(l) = 2 log(2 cosh(l/2)) and its inverse on [2 log 2, inf).
double pseudoLength(double ell);
double pseudoLengthInverse(double u);

enum class TransformDirection { forward, inverse };
// Density against h -> density against u(h) (forward) or back. Mass preserving rebinning
// through a monotone cubic interpolation of the cumulative distribution.
DensityGrid pseudoLengthTransform(const DensityGrid& g, TransformDirection dir);

// Primitive vanishing at 0 by the trapezoid rule on bin centers. Grids starting above 0
// are padded with zeros; the first half bin uses linear extrapolation to ell = 0.
DensityGrid opP(const DensityGrid& g);
// Id - P
DensityGrid opL(const DensityGrid& g);

// x^{K_1} * ... * x^{K_n} convolved along x_1 + ... + x_n = ell.
double linearConvOracle(const std::vector<int>& degrees, double ell);

}  // namespace teichlab
