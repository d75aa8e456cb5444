#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teichlab/loops.hpp"

namespace teichlab {

double loopLength(const LoopSpec& loop, const FNPoint& fn);
// log |Tr| of the holonomy, i.e. log(2 cosh(l/2)); no precision loss for short loops.
double loopLogTrace(const LoopSpec& loop, const FNPoint& fn);

// Dual curve length on the once-holed torus from (l_a, tau_a, L).
double okaiDualLength(double ellA, double tauA, double L);

struct TwistWindow {
    double lo = -1, hi = 1;
};

// Twist of `curve` minimizing the loop length, all other coordinates fixed.
// The window is the starting bracket; it is expanded downhill up to |tau| <= maxAbsTwist.
double calibrateTwistOrigin(const LoopSpec& loop, const std::string& curve, const FNPoint& fn,
                            TwistWindow window = {}, double maxAbsTwist = 1e4);

struct ProbeReport {
    bool monotone = true;
    bool divergent = false;
    std::vector<std::pair<double, double>> samples;  // (boundary length, loop length)
};

// Samples the loop length along the grid of values for the boundary curve.
// divergent: final - initial >= growthThreshold * (grid span).
ProbeReport boundaryGrowthProbe(const LoopSpec& loop, const FNPoint& fn, const std::string& curve,
                                const std::vector<double>& grid, double growthThreshold = 0.25);

struct RayReport {
    std::vector<double> direction;  // unit vector in FNPoint::coordinates() order
    double slope = 0;
    double intercept = 0;
    double residualSup = 0;         // on [tMax/2, tMax]
    double residualSupDoubled = 0;  // same fit on [tMax, 2 tMax]
    double slopeDoubled = 0;
    bool stable = false;            // residualSupDoubled <= 1.1 residualSup + floor
    int samples = 0;
    int skipped = 0;
};

RayReport rayAsymptotics(const LoopSpec& loop, const FNPoint& base, std::vector<double> direction,
                         double tMax, int samples = 64);

using LinearForm = std::array<double, 3>;

struct ExpTerm {
    double coeff;
    LinearForm form;
};

struct ExpSumForm {
    std::vector<ExpTerm> terms;
    double heldOutResidual = 0;  // max relative error on the held-out grid
    double evaluate(const LinearForm& p) const;
};

// Forms (i x + j y + k z)/2 with |i|, |j|, |k| <= maxHalf.
std::vector<LinearForm> halfIntegerForms(int maxHalf);
// Seeded uniform points in [lo, hi]^3.
std::vector<LinearForm> uniformGrid(int n, double lo, double hi, std::uint64_t seed);

// Fits cosh(l/2) of a single-pants loop as a nonnegative combination of exp(form),
// with (x, y, z) the lengths of the curves in pants slots 0, 1, 2.
ExpSumForm expSumFit(const LoopSpec& loop, const std::vector<LinearForm>& candidates,
                     const std::vector<LinearForm>& sampleGrid,
                     const std::vector<LinearForm>& heldOutGrid, double tolerance = 1e-6);

}  // namespace teichlab
