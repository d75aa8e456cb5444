#include "teichlab/nnls.hpp"

#include <limits>
#include <vector>

#include "teichlab/errors.hpp"

namespace teichlab {

namespace {

Eigen::VectorXd solvePassive(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             const std::vector<int>& P) {
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(P.size()));
    for (size_t k = 0; k < P.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(P[k]);
    return Ap.colPivHouseholderQr().solve(b);
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int maxIter) {
    const Eigen::Index n = A.cols();
    if (b.size() != A.rows()) throw InvalidArgument("nnls: size mismatch");
    if (maxIter <= 0) maxIter = static_cast<int>(3 * n + 30);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<char> passive(n, 0);
    double tol = 10 * std::numeric_limits<double>::epsilon() * A.norm() * (b.norm() + 1) *
                 static_cast<double>(std::max<Eigen::Index>(A.rows(), n));
    for (int outer = 0; outer < maxIter; ++outer) {
        Eigen::VectorXd w = A.transpose() * (b - A * x);
        Eigen::Index jmax = -1;
        double wmax = tol;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!passive[j] && w[j] > wmax) {
                wmax = w[j];
                jmax = j;
            }
        if (jmax < 0) return x;
        passive[jmax] = 1;
        for (int inner = 0; inner < maxIter; ++inner) {
            std::vector<int> P;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[j]) P.push_back(static_cast<int>(j));
            Eigen::VectorXd z = solvePassive(A, b, P);
            bool allPos = true;
            for (Eigen::Index k = 0; k < z.size(); ++k)
                if (z[k] <= 0) allPos = false;
            if (allPos) {
                x.setZero();
                for (size_t k = 0; k < P.size(); ++k) x[P[k]] = z[static_cast<Eigen::Index>(k)];
                break;
            }
            double alpha = std::numeric_limits<double>::infinity();
            for (size_t k = 0; k < P.size(); ++k) {
                double zk = z[static_cast<Eigen::Index>(k)];
                if (zk <= 0) {
                    double xk = x[P[k]];
                    alpha = std::min(alpha, xk / (xk - zk));
                }
            }
            for (size_t k = 0; k < P.size(); ++k)
                x[P[k]] += alpha * (z[static_cast<Eigen::Index>(k)] - x[P[k]]);
            for (size_t k = 0; k < P.size(); ++k)
                if (x[P[k]] <= 1e-300) {
                    x[P[k]] = 0;
                    passive[P[k]] = 0;
                }
        }
    }
    throw NumericFailure("nnls: iteration limit reached");
}

}  // namespace teichlab
