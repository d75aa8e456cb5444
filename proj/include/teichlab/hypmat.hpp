#pragma once

#include <array>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace teichlab {

// Angle q * pi/2 + f * pi with q in [0, 8) and |f| <= 1/4. Quarter turns are exact and
// angles close to a quarter turn keep full relative precision in f.
struct Angle {
    int q = 0;
    double f = 0;
    static Angle fromTurns(double x);  // x in units of pi
    static Angle ofVector(double x, double y);  // argument of x + iy
    double turns() const;  // in [-2, 2]
    Angle operator+(Angle o) const;
    Angle operator-() const;
    // cos and sin of half the angle
    void halfCosSin(double& c, double& s) const;
};

// Element of SL2(R), stored in Cartan form R(alpha) a(ell) R(beta) with ell >= 0.
// The entries are exposed as exp(logScale()) * [[e11, e12], [e21, e22]] with the
// largest block entry in [1, 2).
class Mat2 {
public:
    Mat2() = default;
    static Mat2 identity() { return {}; }
    static Mat2 fromCartan(double alpha, double ell, double beta);
    // exp(logScale) * [[a, b], [c, d]]; throws InvalidArgument if the determinant is not 1.
    static Mat2 fromEntries(double a, double b, double c, double d, double logScale = 0);
    // Entries given as sign * exp(logAbs); sign 0 means an exact zero.
    static Mat2 fromLogEntries(const int sign[4], const double logAbs[4]);

    // angles in radians
    double alpha() const;
    double ell() const { return ell_; }
    double beta() const;
    Angle alphaAngle() const { return alpha_; }
    Angle betaAngle() const { return beta_; }
    static Mat2 fromCartan(Angle alpha, double ell, Angle beta);

    struct Block {
        std::array<double, 4> e;  // e11, e12, e21, e22
        double logScale;
    };
    Block block() const;
    double e11() const { return block().e[0]; }
    double e12() const { return block().e[1]; }
    double e21() const { return block().e[2]; }
    double e22() const { return block().e[3]; }
    double logScale() const { return block().logScale; }
    double blockMax() const;
    // Actual entry value; overflows to +-inf for huge matrices.
    double entry(int i, int j) const;

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-() const;

private:
    Angle alpha_;
    double ell_ = 0;
    Angle beta_;
};

enum class GeneratorKind { rotation, translation, woffset };

// R(theta), a(l) = diag(e^{l/2}, e^{-l/2}) or w(l) = R(-pi/2) a(l) R(pi/2).
Mat2 makeGenerator(GeneratorKind kind, double param);
inline Mat2 rotation(double theta) { return makeGenerator(GeneratorKind::rotation, theta); }
inline Mat2 translation(double ell) { return makeGenerator(GeneratorKind::translation, ell); }
inline Mat2 woffset(double ell) { return makeGenerator(GeneratorKind::woffset, ell); }
// R(pi) = [[0, 1], [-1, 0]]
Mat2 matW();

Mat2 compose(std::span<const Mat2> factors);
Mat2 compose(std::initializer_list<Mat2> factors);
Mat2 invert(const Mat2& m);

// |det(block) - exp(-2 logScale)| relative to the size of the products forming the determinant.
double unimodularityError(const Mat2& m);

struct SignedTrace {
    int sign = 0;
    double logAbs = -std::numeric_limits<double>::infinity();
    double value = 0;  // only meaningful when valueValid()
    // log of the largest matrix entry; scale for rounding errors in the trace
    double logNorm = -std::numeric_limits<double>::infinity();
    // |Tr| - 2 computed without cancellation when |Tr| is moderate (NaN otherwise)
    double excess = std::numeric_limits<double>::quiet_NaN();
    // sum of the magnitudes of the two terms whose difference is the excess
    double excessScale = std::numeric_limits<double>::quiet_NaN();

    bool valueValid() const { return logAbs < 700; }
    double absValue() const;
};

SignedTrace traceSigned(const Mat2& m);
// Trace of a(ell), i.e. 2 cosh(ell/2).
SignedTrace translationTrace(double ell);

inline constexpr double kDefaultHyperbolicTol = 1e-12;

// l = 2 arccosh(|Tr|/2). Throws NonHyperbolicElement when |Tr| <= 2 + tol, or, when the
// excess is available, when it is below tol relative to excessScale.
double traceToLength(const SignedTrace& t, double tol = kDefaultHyperbolicTol);

// Numerically stable log cosh / log |sinh|.
double logCosh(double u);
double logSinhAbs(double u);

}  // namespace teichlab
