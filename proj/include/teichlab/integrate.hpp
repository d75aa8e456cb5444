#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "teichlab/density.hpp"
#include "teichlab/loops.hpp"
#include "teichlab/measure.hpp"
#include "teichlab/polynomial.hpp"

namespace teichlab {

// Compactly supported test function on lengths.
struct TestFunction {
    enum class Kind { zero, indicator, spline };
    Kind kind = Kind::zero;
    double a = 0;  // indicator of [0, a]
    // spline: sum_k coeffs[k] B((ell - knot0) / spacing - k), B the centered cubic B-spline
    double knot0 = 0, spacing = 1;
    std::vector<double> coeffs;

    static TestFunction zero() { return {}; }
    static TestFunction indicator(double a);
    static TestFunction spline(double knot0, double spacing, std::vector<double> coeffs);

    double operator()(double ell) const;
    double supportMax() const;
    bool isZero() const;
    void validate() const;
};

double cubicBSpline(double t);

enum class AnalyticLength { none, figureEight, linearSum };

// Inputs of the orbit integration formula. Coordinates are sampled in the order
// (l_1, tau_1, ..., l_k, tau_k) for the interior curves (by id), then the multicurve lengths y.
struct ExpectationConfig {
    std::optional<LoopSpec> loop;
    AnalyticLength analytic = AnalyticLength::none;
    int analyticDim = 3;  // number of y variables for linearSum
    std::vector<std::string> multicurve;          // boundary curves of the filled surface, weighted by y
    std::map<std::string, double> fixedBoundary;  // boundary lengths L held fixed
    int mGamma = 1;
    TestFunction F;
    // V_Gamma in the variables (y_1..y_N, then fixed L by id); zero variables means a constant
    Polynomial complementVolume = Polynomial::constant(0, 1);
    int teichHalfDim = 0;
    int curveCount = 0;
    std::optional<double> normalization;  // V_{g,n}(L); empty means unnormalized
    double radius = 0;                    // truncation radius, 0 means properness search

    void validate() const;
};

struct FormulaSetup {
    std::vector<std::string> names;
    DomainSpec domain;
    Evaluator h;
    Evaluator weight;  // y_1 ... y_N V_Gamma / (m V_{g,n})
    double radius = 0;
};

// Doubling search for R with h > supValue on the outer faces of the truncated domain;
// the returned radius includes a safety factor 2. ConfigurationError past 1e4.
double propernessRadius(const ExpectationConfig& cfg, double supValue);
FormulaSetup formulaSetup(const ExpectationConfig& cfg, double supValue);

struct Estimate {
    double value = 0;
    double error = 0;  // Monte Carlo standard error
};

Estimate expectationViaFormula(const ExpectationConfig& cfg, std::int64_t nSamples, std::uint64_t seed);
DensityGrid densityViaFormula(const ExpectationConfig& cfg, const GridParams& grid, std::int64_t nSamples,
                              std::uint64_t seed);

// Q(a) = int_0^a density at the bin upper edges; same layout as the input.
DensityGrid countingCurve(const DensityGrid& density);

// cosh(h/2) = 2 cosh(x/2) cosh(y/2) + cosh(z/2), lengths clamped to >= 1e-6.
double figureEightLength(double x, double y, double z);

// Twist-direction unfolding on the once-holed torus dual curve: the integral over
// [0, l) of sum_{|k| <= K} F(h(tau + k l)) against the integral over the real line.
struct UnfoldingReport {
    double folded = 0, unfolded = 0, difference = 0;
    int K = 0;
};
UnfoldingReport unfoldingCheck(const TestFunction& F, double ellA, double L, int K);

}  // namespace teichlab
