#include "teichlab/frfit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "teichlab/errors.hpp"

namespace teichlab {

namespace {

constexpr int kMaxBoundExponent = 8;

// Legendre values P_0..P_m at s
void legendre(double s, int m, double* out) {
    out[0] = 1;
    if (m >= 1) out[1] = s;
    for (int k = 2; k <= m; ++k) out[k] = ((2 * k - 1) * s * out[k - 1] - (k - 1) * out[k - 2]) / k;
}

// Monomial coefficients (in s) of P_0..P_m, column k = P_k.
Eigen::MatrixXd legendreToMonomial(int m) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m + 1, m + 1);
    L(0, 0) = 1;
    if (m >= 1) L(1, 1) = 1;
    for (int k = 2; k <= m; ++k)
        for (int j = 0; j <= m; ++j) {
            double v = -(k - 1) * L(j, k - 2);
            if (j > 0) v += (2 * k - 1) * L(j - 1, k - 1);
            L(j, k) = v / k;
        }
    return L;
}

// Monomials in s = (ell - mid) / half expanded into powers of ell.
Eigen::MatrixXd shiftToEll(int m, double mid, double half) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, m + 1);
    for (int k = 0; k <= m; ++k) {
        // ((ell - mid) / half)^k = sum_j C(k, j) ell^j (-mid)^{k-j} / half^k
        double binom = 1;
        for (int j = 0; j <= k; ++j) {
            T(j, k) = binom * std::pow(-mid, k - j) / std::pow(half, k);
            binom = binom * (k - j) / (j + 1);
        }
    }
    return T;
}

}  // namespace

double FRReport::poly(double ell) const {
    double v = 0;
    for (auto it = polyCoeffs.rbegin(); it != polyCoeffs.rend(); ++it) v = v * ell + *it;
    return v;
}

FRReport frDecompose(const DensityGrid& g, int m, double w0, double w1) {
    g.validate();
    if (m < 0) throw InvalidArgument("frDecompose: degree must be >= 0");
    if (m > 8) throw DegreeTooHigh("frDecompose: degree " + std::to_string(m) + " exceeds 8");
    if (!(w0 < w1)) throw InvalidArgument("frDecompose: need w0 < w1");
    if (w0 < g.ellMin || w1 > g.hi(g.bins() - 1) + 1e-9)
        throw InvalidArgument("frDecompose: fit window outside the grid");

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.bins(); ++i)
        if (g.center(i) >= w0 && g.center(i) <= w1) idx.push_back(i);
    const int n = static_cast<int>(idx.size());
    if (n < m + 2) throw DegreeTooHigh("frDecompose: too few bins in the fit window for the degree");
    bool weighted = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return g.variance[i] > 0; });

    const double mid = (w0 + w1) / 2, half = (w1 - w0) / 2;
    Eigen::MatrixXd X(n, m + 1);
    Eigen::VectorXd y(n), sw(n);
    std::vector<double> row(static_cast<std::size_t>(m) + 1);
    for (int r = 0; r < n; ++r) {
        std::size_t i = idx[static_cast<std::size_t>(r)];
        legendre((g.center(i) - mid) / half, m, row.data());
        sw(r) = weighted ? 1 / std::sqrt(g.variance[i]) : 1.0;
        for (int k = 0; k <= m; ++k) X(r, k) = row[static_cast<std::size_t>(k)] * sw(r);
        y(r) = g.mass[i] * sw(r);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double cond = sv(m) > 0 ? sv(0) / sv(m) : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) throw DegreeTooHigh("frDecompose: design condition number " + std::to_string(cond));
    Eigen::VectorXd b = svd.solve(y);
    // covariance (X^T X)^{-1} = V S^{-2} V^T, scaled by the residual variance when unweighted
    Eigen::MatrixXd V = svd.matrixV();
    Eigen::MatrixXd cov = V * sv.array().square().inverse().matrix().asDiagonal() * V.transpose();
    if (!weighted) {
        double rss = (X * b - y).squaredNorm();
        cov *= n > m + 1 ? rss / (n - m - 1) : 0.0;
    }

    FRReport rep;
    rep.w0 = w0;
    rep.w1 = w1;
    rep.condition = cond;
    for (int k = 0; k <= m; ++k)
        if (std::fabs(b(k)) > 3 * std::sqrt(cov(k, k))) rep.effectiveDegree = k;
    Eigen::MatrixXd T = shiftToEll(m, mid, half) * legendreToMonomial(m);
    Eigen::VectorXd a = T * b;
    Eigen::MatrixXd covA = T * cov * T.transpose();
    for (int k = 0; k <= m; ++k) {
        rep.polyCoeffs.push_back(a(k));
        rep.polyStderr.push_back(std::sqrt(std::max(covA(k, k), 0.0)));
    }

    rep.residual = g;
    double resMass = 0, mass = 0;
    for (std::size_t i = 0; i < g.bins(); ++i) {
        // evaluate P through the Legendre form, which is stable far from the window too
        legendre((g.center(i) - mid) / half, m, row.data());
        double p = 0;
        for (int k = 0; k <= m; ++k) p += b(k) * row[static_cast<std::size_t>(k)];
        rep.residual.mass[i] = g.mass[i] - p;
        resMass += std::fabs(rep.residual.mass[i]) * g.binWidth;
        mass += std::fabs(g.mass[i]) * g.binWidth;
    }

    // support start: first bin carrying mass
    std::size_t first = 0;
    while (first < g.bins() && g.mass[first] == 0) ++first;
    rep.decayLo = g.lo(std::min(first, g.bins() - 1));
    rep.decayHi = w0 - 1;
    const bool negligible = resMass <= 1e-9 * std::max(mass, 1e-300);
    if (negligible) {
        rep.lambdaHat = 1;
    } else {
        // slope of log int_ell^{ell+1} |r| over the decay window
        const std::size_t per = static_cast<std::size_t>(std::llround(1 / g.binWidth));
        std::vector<double> xs, ys;
        for (std::size_t i = first; g.lo(i) <= rep.decayHi + 1e-9 && i + per <= g.bins(); ++i) {
            double s = 0;
            for (std::size_t j = i; j < i + per; ++j) s += std::fabs(rep.residual.mass[j]) * g.binWidth;
            if (s > 0) {
                xs.push_back(g.lo(i));
                ys.push_back(std::log(s));
            }
        }
        if (xs.size() < 3) throw FitFailure("frDecompose: decay window too short to estimate the rate");
        double mx = 0, my = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            mx += xs[k];
            my += ys[k];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxy = 0, sxx = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sxy += (xs[k] - mx) * (ys[k] - my);
            sxx += (xs[k] - mx) * (xs[k] - mx);
        }
        double slope = sxy / sxx;
        rep.lambdaHat = std::clamp(-slope, 1e-6, 1.0);
    }

    // c0 from the first half of the window, checked on all of it; c is the smallest
    // integer exponent for which that out-of-sample check holds
    rep.checkMax = w0;
    double fitTop = (1 + w0) / 2;
    // a rounding-level residual carries no decay information, so the constant covers the whole range
    if (fitTop < 1 + g.binWidth || negligible) fitTop = w0;
    auto fitC0 = [&](double c) {
        double J = 0, best = 0;
        for (std::size_t i = 0; i < g.bins() && g.hi(i) <= fitTop + 1e-9; ++i) {
            J += std::exp(g.center(i)) * std::fabs(rep.residual.mass[i]) * g.binWidth;
            double M = g.hi(i);
            if (M < 1) continue;
            best = std::max(best, J / (std::pow(1 + M, c) * std::exp((1 - rep.lambdaHat) * M)));
        }
        return best;
    };
    for (int c = 0; c <= kMaxBoundExponent; ++c) {
        rep.c = c;
        rep.c0 = fitC0(c);
        if (frBoundCheck(rep)) break;
    }
    return rep;
}

bool frBoundCheck(const FRReport& rep) {
    const DensityGrid& r = rep.residual;
    double J = 0;
    for (std::size_t i = 0; i < r.bins(); ++i) {
        double M = r.hi(i);
        if (M > rep.checkMax + 1e-9) break;
        J += std::exp(r.center(i)) * std::fabs(r.mass[i]) * r.binWidth;
        if (M < 1) continue;
        double bound = rep.c0 * std::pow(1 + M, rep.c) * std::exp((1 - rep.lambdaHat) * M);
        if (J > bound * (1 + 1e-12)) return false;
    }
    return true;
}

}  // namespace teichlab
