#pragma once

// Damped Newton centering for self-concordant barrier functions with at most
// one linear equality constraint. Shared by the weight optimizer and the
// small eigencluster SDP used for embedding recovery.

#include <functional>

#include <Eigen/Dense>

namespace mlconn::barrier {

struct NewtonSystem {
  bool feasible = false;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

/// Evaluates gradient and Hessian at x, or reports x outside the domain.
using Oracle = std::function<NewtonSystem(const Eigen::VectorXd&)>;

struct CenteringOutcome {
  Eigen::VectorXd x;
  int steps = 0;
  bool converged = false;
};

/// Minimizes the barrier from a strictly feasible x, keeping
/// equality_row . x fixed (pass an empty row for no constraint). Steps are
/// 1/(1+delta) while the Newton decrement delta exceeds 1/4, full steps
/// afterwards, halved further only if rounding pushes a trial point out of
/// the domain. Stops when delta^2 / 2 <= decrement_tol.
CenteringOutcome center(const Oracle& oracle, Eigen::VectorXd x,
                        const Eigen::VectorXd& equality_row,
                        double decrement_tol, int max_steps);

/// Solves H dx = -g subject to a . dx = 0 with Jacobi scaling. An empty `a`
/// drops the constraint. Returns false if H is not positive definite.
bool newton_direction(const Eigen::MatrixXd& hess, const Eigen::VectorXd& grad,
                      const Eigen::VectorXd& a, Eigen::VectorXd& dx);

}  // namespace mlconn::barrier
