#pragma once

#include <array>

#include "teichlab/hypmat.hpp"

namespace teichlab {

// Perpendicular distances in a pair of pants with boundary lengths (x, y, z):
// t = d(p0, alpha0), tStar = d(p0, beta0), ellStar = d(p0, beta1).
struct PantsTrig {
    double x = 0, y = 0, z = 0;
    double t = 0, tStar = 0, ellStar = 0;
};

// Requires x, y > 0 and z >= 0. For z = 0 the foot p0 sits at the cusp and ellStar = +inf.
PantsTrig solvePants(double x, double y, double z);

// Residuals of the hexagon and the two pentagon relations (relative).
struct PantsResiduals {
    double hexagon = 0, pentagonX = 0, pentagonY = 0;
    double max() const;
};
PantsResiduals pantsResiduals(const PantsTrig& p);

// A^q = a(-t) w(qx) a(t) and B^p = a(tStar) w(-py) a(-tStar).
Mat2 matA(const PantsTrig& p, int q = 1);
Mat2 matB(const PantsTrig& p, int n = 1);

enum class Letter { a, b };

// sign(n) R(pi/2) A^n R(pi/2) for letter a, -sign(n) R(-pi/2) B^n R(-pi/2) for letter b.
// All entries are nonnegative.
Mat2 sMat(Letter letter, int n, const PantsTrig& p);
// log of the entries of sMat, row-major (-inf for an exact zero).
std::array<double, 4> sMatLogEntries(Letter letter, int n, const PantsTrig& p);

}  // namespace teichlab
