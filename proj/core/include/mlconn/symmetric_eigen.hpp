#pragma once

#include <Eigen/Dense>

namespace mlconn {

/// Eigen-decomposition of a dense real symmetric matrix by Householder
/// reduction to tridiagonal form followed by implicit-shift QL iterations.
/// Eigenvalues come back ascending; column k of `vectors` pairs with
/// values(k). Only the lower triangle of the input is read.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Throws Error(kConvergenceFailure) if some eigenvalue needs more than
/// `max_sweeps_per_value` QL sweeps.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a,
                               int max_sweeps_per_value = 60);

}  // namespace mlconn
