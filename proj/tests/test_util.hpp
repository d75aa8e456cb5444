#pragma once

#include <algorithm>
#include <cmath>

#include "teichlab/hypmat.hpp"

namespace tt {

// Max entry difference relative to the larger of the two norms.
inline double matDiff(const teichlab::Mat2& A, const teichlab::Mat2& B) {
    double M = std::max(A.logScale() + std::log(A.blockMax()), B.logScale() + std::log(B.blockMax()));
    double fa = std::exp(A.logScale() - M), fb = std::exp(B.logScale() - M);
    return std::max({std::fabs(A.e11() * fa - B.e11() * fb), std::fabs(A.e12() * fa - B.e12() * fb),
                     std::fabs(A.e21() * fa - B.e21() * fb), std::fabs(A.e22() * fa - B.e22() * fb)});
}

inline double rel(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

// Signed trace difference relative to max(|Tr|, matrix norm).
inline double traceDiff(const teichlab::SignedTrace& a, const teichlab::SignedTrace& b) {
    double M = std::max({a.logAbs, b.logAbs, a.logNorm, b.logNorm});
    double va = a.sign * std::exp(a.logAbs - M), vb = b.sign * std::exp(b.logAbs - M);
    return std::fabs(va - vb);
}

}  // namespace tt
