#pragma once

#include <Eigen/Dense>

namespace teichlab {

// Lawson-Hanson nonnegative least squares: min |A x - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int maxIter = 0);

}  // namespace teichlab
