#include "teichlab/pants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "teichlab/errors.hpp"

namespace teichlab {

namespace {

// cosh(t) - 1 given coth(x/2) u - 1 with u = 1 + s.
double acoshOnePlus(double e) { return 2 * std::asinh(std::sqrt(e / 2)); }

}  // namespace

// Unknown delta = u^2 - 1 with u = coth(ellStar). With cx = coth(x/2) and
// A = 1/sinh^2(x/2) + cx^2 delta, B = 1/sinh^2(y/2) + cy^2 delta, the hexagon relation
// minus its value at delta = 0 reads
//   cx cy delta + sqrt(AB) - sqrt(A0 B0) = 2 sinh^2(z/4) / (sinh(x/2) sinh(y/2)).
// The left side is increasing in delta and bounded below by cx cy delta.
PantsTrig solvePants(double x, double y, double z) {
    if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y))
        throw InvalidArgument("solvePants: x and y must be positive and finite");
    if (!(z >= 0) || !std::isfinite(z)) throw InvalidArgument("solvePants: z must be >= 0");

    PantsTrig p{x, y, z, 0, 0, 0};
    double lsx = logSinhAbs(x / 2), lsy = logSinhAbs(y / 2);
    double cx = 1 / std::tanh(x / 2), cy = 1 / std::tanh(y / 2);
    double A0 = std::exp(-2 * lsx), B0 = std::exp(-2 * lsy);
    double s = 0;  // u - 1
    if (z > 0) {
        double target = std::exp(2 * logSinhAbs(z / 4) + std::log(2.0) - lsx - lsy);
        double sq0 = std::sqrt(A0 * B0);
        auto D = [&](double d) {
            double A = A0 + cx * cx * d, B = B0 + cy * cy * d;
            double num = A0 * cy * cy * d + B0 * cx * cx * d + cx * cx * cy * cy * d * d;
            return cx * cy * d + num / (std::sqrt(A * B) + sq0);
        };
        auto dD = [&](double d) {
            double A = A0 + cx * cx * d, B = B0 + cy * cy * d;
            return cx * cy + (cx * cx * B + cy * cy * A) / (2 * std::sqrt(A * B));
        };
        double lo = 0, hi = target / (cx * cy);
        if (!std::isfinite(hi)) throw NumericFailure("solvePants: bracket overflow");
        double d = hi / 2;
        bool done = false;
        for (int it = 0; it < 200; ++it) {
            double f = D(d) - target;
            if (f > 0) hi = d; else lo = d;
            double step = f / dD(d);
            double nd = d - step;
            if (!(nd > lo && nd < hi)) nd = (lo + hi) / 2;
            if (std::fabs(nd - d) <= 1e-16 * nd || hi - lo <= 1e-16 * hi) {
                d = nd;
                done = true;
                break;
            }
            d = nd;
        }
        if (!done)
            throw NumericFailure("solvePants: no convergence at x=" + std::to_string(x) +
                                 " y=" + std::to_string(y) + " z=" + std::to_string(z));
        s = d / (std::sqrt(1 + d) + 1);
    }
    p.ellStar = s > 0 ? 0.5 * std::log1p(2 / s) : std::numeric_limits<double>::infinity();
    p.t = acoshOnePlus(2 / std::expm1(x) + cx * s);
    p.tStar = acoshOnePlus(2 / std::expm1(y) + cy * s);
    return p;
}

double PantsResiduals::max() const { return std::max({hexagon, pentagonX, pentagonY}); }

PantsResiduals pantsResiduals(const PantsTrig& p) {
    PantsResiduals r;
    double hx = p.x / 2, hy = p.y / 2, hz = p.z / 2;
    double lhs = std::cosh(p.t + p.tStar);
    double rhs = (std::cosh(hx) * std::cosh(hy) + std::cosh(hz)) / (std::sinh(hx) * std::sinh(hy));
    r.hexagon = std::fabs(lhs - rhs) / std::fabs(rhs);
    double ce = std::isinf(p.ellStar) ? 1.0 : 1 / std::tanh(p.ellStar);
    double px = 1 / std::tanh(hx) * ce, py = 1 / std::tanh(hy) * ce;
    r.pentagonX = std::fabs(std::cosh(p.t) - px) / px;
    r.pentagonY = std::fabs(std::cosh(p.tStar) - py) / py;
    return r;
}

Mat2 matA(const PantsTrig& p, int q) {
    if (q == 0) return Mat2::identity();
    return compose({translation(-p.t), woffset(q * p.x), translation(p.t)});
}

Mat2 matB(const PantsTrig& p, int n) {
    if (n == 0) return Mat2::identity();
    return compose({translation(p.tStar), woffset(-n * p.y), translation(-p.tStar)});
}

namespace {
double logAddExp(double a, double b) {
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}
}  // namespace

// Closed form with u = n len/2:
//   sign(n) [[sh t sh u, ch t sh u + ch u], [ch t sh u - ch u, sh t sh u]]
// which is nonnegative. For n < 0 the two off-diagonal entries trade places.
// With ch t = coth(len/2) (1 + s), s = coth(ellStar) - 1, the small entry is
//   sh((|n| - 1) len/2) / sh(len/2) + s coth(len/2) sh(u)
// a sum of nonnegative terms, so it keeps full relative precision when the pants
// is close to a cusp (s -> 0).
std::array<double, 4> sMatLogEntries(Letter letter, int n, const PantsTrig& p) {
    if (n == 0) throw InvalidArgument("sMat: n must be nonzero");
    double t = letter == Letter::a ? p.t : p.tStar;
    double len = letter == Letter::a ? p.x : p.y;
    double u = std::fabs(n * len / 2);
    double ls = logSinhAbs(u), lc = logCosh(u);
    double lsht = logSinhAbs(t), lcht = logCosh(t);
    double s = std::isinf(p.ellStar) ? 0.0 : 2 / std::expm1(2 * p.ellStar);
    double inf = std::numeric_limits<double>::infinity();
    double la = std::abs(n) > 1 ? logSinhAbs((std::abs(n) - 1) * len / 2) - logSinhAbs(len / 2) : -inf;
    double lb = s > 0 ? std::log(s) + logCosh(len / 2) - logSinhAbs(len / 2) + ls : -inf;
    double ld = la == -inf ? lb : (lb == -inf ? la : logAddExp(la, lb));
    std::array<double, 4> lg = {lsht + ls, logAddExp(lcht + ls, lc), ld, lsht + ls};
    if (n < 0) std::swap(lg[1], lg[2]);
    return lg;
}

Mat2 sMat(Letter letter, int n, const PantsTrig& p) {
    std::array<double, 4> lg = sMatLogEntries(letter, n, p);
    int sg[4];
    for (int i = 0; i < 4; ++i) sg[i] = lg[i] == -std::numeric_limits<double>::infinity() ? 0 : 1;
    return Mat2::fromLogEntries(sg, lg.data());
}

}  // namespace teichlab
