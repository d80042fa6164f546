#include "mlconn/barrier.hpp"

#include <cmath>

namespace mlconn::barrier {

bool newton_direction(const Eigen::MatrixXd& hess, const Eigen::VectorXd& grad,
                      const Eigen::VectorXd& a, Eigen::VectorXd& dx) {
  const Eigen::Index n = grad.size();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = hess(i, i);
    if (!(h > 0.0) || !std::isfinite(h)) return false;
    d(i) = 1.0 / std::sqrt(h);
  }
  const Eigen::MatrixXd scaled = d.asDiagonal() * hess * d.asDiagonal();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(scaled);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;

  const Eigen::VectorXd u = ldlt.solve(d.cwiseProduct(grad));
  Eigen::VectorXd step = -u;
  if (a.size() == n) {
    const Eigen::VectorXd da = d.cwiseProduct(a);
    const Eigen::VectorXd v = ldlt.solve(da);
    const double denom = da.dot(v);
    if (!(denom > 0.0)) return false;
    step += (da.dot(u) / denom) * v;
  }
  dx = d.cwiseProduct(step);
  return dx.allFinite();
}

CenteringOutcome center(const Oracle& oracle, Eigen::VectorXd x,
                        const Eigen::VectorXd& equality_row,
                        double decrement_tol, int max_steps) {
  CenteringOutcome out;
  NewtonSystem sys = oracle(x);
  if (!sys.feasible) {
    out.x = std::move(x);
    return out;
  }
  Eigen::VectorXd dx;
  for (; out.steps < max_steps; ++out.steps) {
    if (!newton_direction(sys.hess, sys.grad, equality_row, dx)) break;
    const double dec2 = -sys.grad.dot(dx);
    if (!(dec2 >= 0.0) || dec2 / 2.0 <= decrement_tol) {
      out.converged = true;
      break;
    }
    const double delta = std::sqrt(dec2);
    double s = delta <= 0.25 ? 1.0 : 1.0 / (1.0 + delta);
    bool moved = false;
    for (int halvings = 0; halvings < 60; ++halvings, s *= 0.5) {
      Eigen::VectorXd trial = x + s * dx;
      NewtonSystem next = oracle(trial);
      if (next.feasible) {
        x = std::move(trial);
        sys = std::move(next);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  out.x = std::move(x);
  return out;
}

}  // namespace mlconn::barrier
