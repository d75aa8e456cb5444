#include "teichlab/hypmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "teichlab/errors.hpp"

namespace teichlab {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;
constexpr double kSqrtHalf = std::numbers::sqrt2 / 2;

int mod8(int q) { return ((q % 8) + 8) % 8; }

Angle make(int q, double f) {
    double k = std::nearbyint(2 * f);
    Angle a;
    a.q = mod8(q + static_cast<int>(k));
    a.f = f - k / 2;
    return a;
}

double logAddExp(double a, double b) {
    if (a == -HUGE_VAL) return b;
    if (b == -HUGE_VAL) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// asinh(exp(logS))
double asinhExp(double logS) {
    if (logS == -HUGE_VAL) return 0;
    if (logS < 20) return std::asinh(std::exp(logS));
    return logS + std::log1p(std::sqrt(1 + std::exp(-2 * logS)));
}

int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Lift an angle known mod 2pi to the representative mod 4pi closest to a rough value.
Angle lift(Angle exact, double roughTurns) {
    double d = std::remainder(exact.turns() - roughTurns, 4.0);
    return std::fabs(d) <= 1 ? exact : make(exact.q + 4, exact.f);
}

struct Cartan {
    Angle phi;
    double ell;
    Angle psi;
};

// Cartan form of a(l1) R(theta) a(l2) with l1, l2 >= 0.
// With c, s = cos, sin(theta/2), u = (l1+l2)/2, v = (l1-l2)/2, the half sums are
// A = c ch u, B = s ch v, C = c sh u, D = s sh v. Everything below is scaled by 2e^{-u}.
Cartan middle(double l1, Angle theta, double l2) {
    if (l1 == 0) return {theta, l2, Angle{}};
    if (l2 == 0) return {Angle{}, l1, theta};
    double c, s;
    theta.halfCosSin(c, s);
    double S = l1 + l2, d = l1 - l2;
    double e1 = std::exp(-l1), e2 = std::exp(-l2);
    double Ap = c * (1 + e1 * e2), Bp = s * (e1 + e2);
    double Cp = -c * std::expm1(-S);
    double Dp = d >= 0 ? -s * e2 * std::expm1(-d) : s * e1 * std::expm1(d);
    double h = std::hypot(Cp, Dp);
    Angle xpy = Angle::ofVector(Ap, Bp);
    if (h == 0) return {xpy + xpy, 0, Angle{}};
    Angle xmy = Angle::ofVector(Cp, -Dp);
    double ell = 2 * asinhExp(S / 2 + std::log(h / 2));
    // phi = arg((A + iB)(C - iD)), psi = arg((A + iB)(C + iD)) with the products in closed form
    double sp = -std::expm1(-2 * S);
    double sd = d >= 0 ? -e2 * e2 * std::expm1(-2 * d) : e1 * e1 * std::expm1(2 * d);
    double s1 = -e2 * std::expm1(-2 * l1), s2 = -e1 * std::expm1(-2 * l2);
    Angle phi = Angle::ofVector((c * c * sp + s * s * sd) / 2, s * c * s2);
    Angle psi = Angle::ofVector((c * c * sp - s * s * sd) / 2, s * c * s1);
    return {lift(phi, (xpy + xmy).turns()), ell, lift(psi, (xpy + (-xmy)).turns())};
}

// Same decomposition from half sums given as sign * exp(log).
Cartan fromHalfParts(int sA, double lA, int sB, double lB, int sC, double lC, int sD, double lD) {
    double la = sA ? lA : -HUGE_VAL, lb = sB ? lB : -HUGE_VAL;
    double m1 = std::max(la, lb);
    Angle xpy;
    if (m1 != -HUGE_VAL)
        xpy = Angle::ofVector(sA ? sA * std::exp(la - m1) : 0.0, sB ? sB * std::exp(lb - m1) : 0.0);
    double lc = sC ? lC : -HUGE_VAL, ld = sD ? lD : -HUGE_VAL;
    double m2 = std::max(lc, ld);
    if (m2 == -HUGE_VAL) return {xpy + xpy, 0, Angle{}};
    Angle xmy = Angle::ofVector(sC ? sC * std::exp(lc - m2) : 0.0, sD ? -sD * std::exp(ld - m2) : 0.0);
    double logS = 0.5 * logAddExp(2 * lc, 2 * ld);
    return {xpy + xmy, 2 * asinhExp(logS), xpy + (-xmy)};
}

}  // namespace

Angle Angle::fromTurns(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("angle must be finite");
    double y = std::remainder(x, 4.0);
    double k = std::nearbyint(2 * y);
    Angle a;
    a.q = mod8(static_cast<int>(k));
    a.f = y - k / 2;
    return a;
}

Angle Angle::ofVector(double x, double y) {
    if (x == 0 && y == 0) return {};
    if (std::fabs(y) <= std::fabs(x)) return make(x > 0 ? 0 : 2, std::atan(y / x) / kPi);
    return make(y > 0 ? 1 : -1, -std::atan(x / y) / kPi);
}

double Angle::turns() const { return std::remainder(q / 2.0 + f, 4.0); }

Angle Angle::operator+(Angle o) const { return make(q + o.q, f + o.f); }

Angle Angle::operator-() const { return make(-q, -f); }

void Angle::halfCosSin(double& c, double& s) const {
    // half angle = q * pi/4 + f * pi/2
    double cf = std::cos(kPi * f / 2), sf = std::sin(kPi * f / 2);
    double bc, bs;  // cos, sin of q * pi/4
    switch (q) {
        case 0: bc = 1, bs = 0; break;
        case 1: bc = kSqrtHalf, bs = kSqrtHalf; break;
        case 2: bc = 0, bs = 1; break;
        case 3: bc = -kSqrtHalf, bs = kSqrtHalf; break;
        case 4: bc = -1, bs = 0; break;
        case 5: bc = -kSqrtHalf, bs = -kSqrtHalf; break;
        case 6: bc = 0, bs = -1; break;
        default: bc = kSqrtHalf, bs = -kSqrtHalf; break;
    }
    c = bc * cf - bs * sf;
    s = bs * cf + bc * sf;
}

double logCosh(double u) {
    double a = std::fabs(u);
    return a + std::log1p(std::exp(-2 * a)) - kLn2;
}

double logSinhAbs(double u) {
    double a = std::fabs(u);
    if (a < 20) return std::log(std::sinh(a));
    return a + std::log1p(-std::exp(-2 * a)) - kLn2;
}

double Mat2::alpha() const { return alpha_.turns() * kPi; }
double Mat2::beta() const { return beta_.turns() * kPi; }

Mat2 Mat2::fromCartan(Angle alpha, double ell, Angle beta) {
    if (!(ell >= 0) || !std::isfinite(ell)) throw InvalidArgument("Mat2: Cartan length must be finite and >= 0");
    Mat2 m;
    m.alpha_ = make(alpha.q, alpha.f);
    m.ell_ = ell;
    m.beta_ = make(beta.q, beta.f);
    return m;
}

Mat2 Mat2::fromCartan(double alpha, double ell, double beta) {
    return fromCartan(Angle::fromTurns(alpha / kPi), ell, Angle::fromTurns(beta / kPi));
}

Mat2 Mat2::fromEntries(double p, double q, double r, double t, double logScale) {
    for (double v : {p, q, r, t, logScale})
        if (!std::isfinite(v)) throw InvalidArgument("Mat2: non-finite entry");
    double pt = p * t, qr = q * r, target = std::exp(-2 * logScale);
    double scale = std::max({std::fabs(pt), std::fabs(qr), target});
    if (!(std::fabs(pt - qr - target) <= 1e-8 * scale))
        throw InvalidArgument("inconsistent-input: matrix is not unimodular");
    double A = (p + t) / 2, B = (q - r) / 2, C = (p - t) / 2, D = (q + r) / 2;
    auto lg = [&](double v) { return v == 0 ? -HUGE_VAL : std::log(std::fabs(v)) + logScale; };
    Cartan k = fromHalfParts(sgn(A), lg(A), sgn(B), lg(B), sgn(C), lg(C), sgn(D), lg(D));
    return fromCartan(k.phi, k.ell, k.psi);
}

Mat2 Mat2::fromLogEntries(const int sign[4], const double logAbs[4]) {
    double top = -HUGE_VAL;
    for (int i = 0; i < 4; ++i)
        if (sign[i] != 0) top = std::max(top, logAbs[i]);
    if (!std::isfinite(top)) throw NumericFailure("Mat2: zero or non-finite log entries");
    double e[4];
    for (int i = 0; i < 4; ++i) e[i] = sign[i] == 0 ? 0.0 : sign[i] * std::exp(logAbs[i] - top);
    return fromEntries(e[0], e[1], e[2], e[3], top);
}

Mat2::Block Mat2::block() const {
    double cx, sx, cy, sy;
    alpha_.halfCosSin(cx, sx);
    beta_.halfCosSin(cy, sy);
    double q = std::exp(-ell_);
    Block b;
    b.e = {cx * cy - sx * sy * q, cx * sy + sx * cy * q, -sx * cy - cx * sy * q, -sx * sy + cx * cy * q};
    b.logScale = ell_ / 2;
    double m = std::max({std::fabs(b.e[0]), std::fabs(b.e[1]), std::fabs(b.e[2]), std::fabs(b.e[3])});
    int k = std::ilogb(m);
    for (double& v : b.e) v = std::ldexp(v, -k);
    b.logScale += k * kLn2;
    return b;
}

double Mat2::blockMax() const {
    auto b = block();
    return std::max({std::fabs(b.e[0]), std::fabs(b.e[1]), std::fabs(b.e[2]), std::fabs(b.e[3])});
}

double Mat2::entry(int i, int j) const {
    auto b = block();
    return b.e[2 * i + j] * std::exp(b.logScale);
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Cartan k = middle(ell_, beta_ + o.alpha_, o.ell_);
    return fromCartan(alpha_ + k.phi, k.ell, k.psi + o.beta_);
}

Mat2 Mat2::operator-() const { return fromCartan(alpha_ + Angle{4, 0}, ell_, beta_); }

Mat2 makeGenerator(GeneratorKind kind, double param) {
    if (!std::isfinite(param)) throw InvalidArgument("makeGenerator: non-finite parameter");
    const Angle zero{0, 0}, half{2, 0}, quarter{1, 0};
    switch (kind) {
        case GeneratorKind::rotation:
            return Mat2::fromCartan(param, 0, 0);
        case GeneratorKind::translation:
            // a(-l) = R(pi) a(l) R(-pi)
            return param >= 0 ? Mat2::fromCartan(zero, param, zero) : Mat2::fromCartan(half, -param, -half);
        case GeneratorKind::woffset:
            return param >= 0 ? Mat2::fromCartan(-quarter, param, quarter)
                              : Mat2::fromCartan(quarter, -param, -quarter);
    }
    throw InvalidArgument("makeGenerator: unknown kind");
}

Mat2 matW() { return Mat2::fromCartan(Angle{2, 0}, 0, Angle{}); }

Mat2 compose(std::span<const Mat2> factors) {
    if (factors.empty()) throw InvalidArgument("compose: empty sequence");
    Mat2 r = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) r = r * factors[i];
    return r;
}

Mat2 compose(std::initializer_list<Mat2> factors) {
    return compose(std::span<const Mat2>(factors.begin(), factors.size()));
}

double unimodularityError(const Mat2& m) {
    auto b = m.block();
    double p = b.e[0] * b.e[3], q = b.e[1] * b.e[2];
    double target = std::exp(-2 * b.logScale);
    double scale = std::max({std::fabs(p), std::fabs(q), target});
    if (scale == 0) return 0;
    return std::fabs(p - q - target) / scale;
}

// (R(a) a(l) R(b))^-1 = R(-b) a(-l) R(-a) = R(pi - b) a(l) R(-pi - a)
Mat2 invert(const Mat2& m) {
    const Angle half{2, 0};
    return Mat2::fromCartan(half + (-m.betaAngle()), m.ell(), -half + (-m.alphaAngle()));
}

double SignedTrace::absValue() const { return sign == 0 ? 0.0 : std::exp(logAbs); }

SignedTrace traceSigned(const Mat2& m) {
    SignedTrace t;
    auto b = m.block();
    t.logNorm = std::log(std::max({std::fabs(b.e[0]), std::fabs(b.e[1]), std::fabs(b.e[2]),
                                   std::fabs(b.e[3])})) + b.logScale;
    // Tr = 2 cosh(l/2) cos(sigma), sigma = (alpha + beta)/2
    Angle sum = m.alphaAngle() + m.betaAngle();
    double c, sn;
    sum.halfCosSin(c, sn);
    double h = m.ell() / 2;
    if (c == 0) {
        t.sign = 0;
        t.value = 0;
        t.excess = -2;
        t.excessScale = 2;
        return t;
    }
    t.sign = c > 0 ? 1 : -1;
    t.logAbs = kLn2 + logCosh(h) + std::log(std::fabs(c));
    t.value = t.valueValid() ? t.sign * std::exp(t.logAbs) : t.sign * HUGE_VAL;
    if (t.logAbs < 30) {
        // |Tr| - 2 = 4 sinh^2(h/2) |cos sigma| - 4 sin^2(s/2), s = sigma folded into [-pi/2, pi/2]
        double s;  // in units of pi
        if (sum.q % 4 == 0)
            s = sum.f / 2;
        else
            s = std::remainder(sum.q / 4.0 + sum.f / 2, 1.0);
        double sh = std::sinh(h / 2), ss = std::sin(kPi * s / 2);
        double grow = 4 * sh * sh * std::fabs(c), turn = 4 * ss * ss;
        t.excess = grow - turn;
        t.excessScale = grow + turn;
    }
    return t;
}

SignedTrace translationTrace(double ell) { return traceSigned(translation(ell)); }

double traceToLength(const SignedTrace& t, double tol) {
    using K = NonHyperbolicElement::Kind;
    if (std::isfinite(t.excess)) {
        double scale = std::isfinite(t.excessScale) ? t.excessScale : 1.0;
        if (t.excess <= tol * scale)
            throw NonHyperbolicElement(t.excess < -tol * scale ? K::elliptic : K::parabolic, 2 + t.excess);
        return 4 * std::asinh(std::sqrt(t.excess) / 2);
    }
    if (t.sign == 0) throw NonHyperbolicElement(K::elliptic, 0);
    if (t.logAbs < 20) {
        double T = std::exp(t.logAbs);
        if (T <= 2 + tol)
            throw NonHyperbolicElement(std::fabs(T - 2) <= tol ? K::parabolic : K::elliptic, T);
        return 2 * std::acosh(T / 2);
    }
    double r = std::exp(2 * kLn2 - 2 * t.logAbs);  // 4 / Tr^2
    return 2 * (t.logAbs - kLn2 + std::log1p(std::sqrt(1 - r)));
}

}  // namespace teichlab
