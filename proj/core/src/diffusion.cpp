#include "mlconn/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "mlconn/error.hpp"
#include "mlconn/spectra.hpp"

namespace mlconn {

DiffusionTrajectory simulate(const Eigen::MatrixXd& laplacian, const Eigen::VectorXd& x0,
                             const std::vector<double>& times) {
  if (laplacian.rows() != x0.size()) {
    throw Error(ErrorKind::kSizeMismatch, "initial state does not match the Laplacian");
  }
  if (times.empty() || times.front() != 0.0 || !std::is_sorted(times.begin(), times.end())) {
    throw Error(ErrorKind::kInvalidArgument, "times must ascend from 0");
  }
  const Spectrum s = full_spectrum(laplacian);
  const Eigen::VectorXd rates = s.values.cwiseMax(0.0);
  const Eigen::VectorXd coeff = s.vectors.transpose() * x0;

  DiffusionTrajectory traj;
  traj.times = times;
  traj.initial_state = x0;
  traj.fastest_rate = rates.size() > 0 ? rates.maxCoeff() : 0.0;
  traj.states.reserve(times.size());
  traj.states.push_back(x0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const Eigen::VectorXd decay = (-rates * times[k]).array().exp().matrix();
    traj.states.push_back(s.vectors * decay.cwiseProduct(coeff));
  }
  return traj;
}

DiffusionTrajectory simulate(const SupraLaplacian& laplacian, const Eigen::VectorXd& x0,
                             const std::vector<double>& times) {
  return simulate(laplacian.matrix, x0, times);
}

double estimate_rate(const DiffusionTrajectory& traj) {
  if (traj.states.size() != traj.times.size() || traj.states.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "malformed trajectory");
  }
  const double mean = traj.initial_state.mean();
  const auto deviation = [&](const Eigen::VectorXd& x) {
    return (x.array() - mean).matrix().norm();
  };
  const double d0 = deviation(traj.initial_state);
  if (!(d0 > 1e-12 * std::max(1.0, traj.initial_state.norm()))) {
    throw Error(ErrorKind::kDegenerateTrajectory, "initial state is already at consensus");
  }

  const double settle = traj.fastest_rate > 0.0 ? std::log(1e3) / traj.fastest_rate : 0.0;
  std::vector<double> ts;
  std::vector<double> logs;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] < settle) continue;
    const double d = deviation(traj.states[k]);
    if (!(d > 1e-12 * d0)) continue;
    ts.push_back(traj.times[k]);
    logs.push_back(std::log(d));
  }
  const std::size_t first = ts.size() / 2;
  const std::size_t count = ts.size() - first;
  if (count < 3) {
    throw Error(ErrorKind::kInvalidArgument, "fewer than three samples in the asymptotic regime");
  }
  Eigen::MatrixXd design(static_cast<Eigen::Index>(count), 2);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    design(static_cast<Eigen::Index>(k), 0) = 1.0;
    design(static_cast<Eigen::Index>(k), 1) = ts[first + k];
    rhs(static_cast<Eigen::Index>(k)) = logs[first + k];
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
  return -fit(1);
}

double within_layer_spread(const Eigen::VectorXd& state, int start, int count) {
  if (start < 0 || count < 0 || start + count > state.size()) {
    throw Error(ErrorKind::kIndexOutOfRange, "layer range outside the state vector");
  }
  if (count == 0) return 0.0;
  const auto seg = state.segment(start, count);
  return std::sqrt((seg.array() - seg.mean()).square().sum() / count);
}

std::vector<double> uniform_times(double t_end, int count) {
  if (count < 2 || !(t_end > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "need t_end > 0 and at least two samples");
  }
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = t_end * k / (count - 1);
  return t;
}

}  // namespace mlconn
