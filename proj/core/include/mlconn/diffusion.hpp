#pragma once

// Linear diffusion x' = -L x, propagated exactly through the eigenbasis.

#include <vector>

#include <Eigen/Dense>

#include "mlconn/multinet.hpp"

namespace mlconn {

struct DiffusionTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  Eigen::VectorXd initial_state;
  /// Largest eigenvalue of L, used to locate the asymptotic regime.
  double fastest_rate = 0.0;
};

/// X(t) = sum_k exp(-lambda_k t) (v_k . X0) v_k at each requested time.
/// Times must ascend from 0.
DiffusionTrajectory simulate(const Eigen::MatrixXd& laplacian, const Eigen::VectorXd& x0,
                             const std::vector<double>& times);
DiffusionTrajectory simulate(const SupraLaplacian& laplacian, const Eigen::VectorXd& x0,
                             const std::vector<double>& times);

/// Decay rate from a least-squares fit of log |X(t) - mean| over the last
/// half of the samples taken after t = ln(1e3) / lambda_N (samples below
/// 1e-12 of the initial deviation are discarded). Throws
/// kDegenerateTrajectory when X0 is already at consensus and
/// kInvalidArgument with fewer than three usable samples.
double estimate_rate(const DiffusionTrajectory& trajectory);

/// Standard deviation of state[start .. start+count).
double within_layer_spread(const Eigen::VectorXd& state, int start, int count);

/// count equally spaced times on [0, t_end].
std::vector<double> uniform_times(double t_end, int count);

}  // namespace mlconn
