#pragma once

#include <limits>
#include <vector>

#include "teichlab/density.hpp"

namespace teichlab {

// density = P(ell) + r(ell) with P a polynomial fitted on [w0, w1] and r decaying.
struct FRReport {
    std::vector<double> polyCoeffs;  // ascending powers of ell
    std::vector<double> polyStderr;
    int effectiveDegree = -1;  // highest Legendre order that is significant at 3 sigma
    DensityGrid residual;
    double lambdaHat = 0;  // decay rate, in (0, 1]
    double c0 = 0, c = 1;  // tail bound constants, c an integer in [0, 8]
    double w0 = 0, w1 = 0;
    double decayLo = 0, decayHi = 0;
    double condition = 0;
    // upper end of the M range on which the tail bound was fitted
    double checkMax = std::numeric_limits<double>::infinity();

    double poly(double ell) const;
};

// Weighted least squares in a scaled Legendre basis (weights 1/variance when available).
// Throws DegreeTooHigh if m > 8 or the design is too ill-conditioned, InvalidArgument for
// a window that does not fit in the grid.
FRReport frDecompose(const DensityGrid& g, int m, double w0, double w1);

// int_0^M e^ell |r| <= c0 (1 + M)^c e^{(1 - lambdaHat) M} on the grid points M in [1, checkMax].
bool frBoundCheck(const FRReport& rep);

}  // namespace teichlab
