#include "mlconn/design_tools.hpp"

#include <algorithm>
#include <cmath>

#include "mlconn/error.hpp"
#include "mlconn/spectra.hpp"

namespace mlconn {

namespace {

Eigen::MatrixXd interlink_laplacian(const Eigen::MatrixXd& w) {
  const Eigen::Index n = w.rows();
  const Eigen::Index m = w.cols();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n + m, n + m);
  l.topLeftCorner(n, n).diagonal() = w.rowwise().sum();
  l.bottomRightCorner(m, m).diagonal() = w.colwise().sum().transpose();
  l.topRightCorner(n, m) = -w;
  l.bottomLeftCorner(m, n) = -w.transpose();
  return l;
}

}  // namespace

PerturbationInput make_perturbation(const MultilayerNetwork& network,
                                    const WeightAssignment& base,
                                    const Eigen::MatrixXd& w_prime, double epsilon) {
  if (w_prime.rows() != network.n() || w_prime.cols() != network.m()) {
    throw Error(ErrorKind::kSizeMismatch, "increment must be n x m");
  }
  if ((w_prime.array() < 0.0).any()) {
    throw Error(ErrorKind::kInvalidWeight, "increment weights must be nonnegative");
  }
  const FiedlerData fd = fiedler(build_supra_laplacian(network, base).matrix);
  PerturbationInput in;
  in.base_eigenvalue = fd.lambda2;
  in.base_eigenvector = fd.vector;
  in.perturbation = interlink_laplacian(w_prime);
  in.epsilon = epsilon;
  in.c0 = base.total();
  in.c_prime = w_prime.sum();
  return in;
}

double rayleigh_increment(const PerturbationInput& input) {
  const Eigen::VectorXd& x = input.base_eigenvector;
  const Eigen::MatrixXd& l = input.perturbation;
  if (l.rows() != l.cols() || l.rows() != x.size()) {
    throw Error(ErrorKind::kSizeMismatch, "perturbation and eigenvector sizes differ");
  }
  const double norm2 = x.squaredNorm();
  if (!(norm2 > 0.0)) throw Error(ErrorKind::kInvalidArgument, "zero base eigenvector");
  return x.dot(l * x) / norm2;
}

double predicted_eigenvalue(const PerturbationInput& input) {
  return input.base_eigenvalue + input.epsilon * rayleigh_increment(input);
}

double post_threshold_increment(const Eigen::VectorXd& fiedler_vec,
                                const Eigen::MatrixXd& w_prime, LayerSide side) {
  const Eigen::VectorXd totals = side == LayerSide::kLayer1
                                     ? Eigen::VectorXd(w_prime.rowwise().sum())
                                     : Eigen::VectorXd(w_prime.colwise().sum().transpose());
  if (totals.size() != fiedler_vec.size()) {
    throw Error(ErrorKind::kSizeMismatch, "Fiedler vector does not match the chosen layer");
  }
  return fiedler_vec.cwiseAbs2().dot(totals);
}

GreedyPlan greedy_interlinks(const MultilayerNetwork& network, int r, double w0) {
  if (r < 0) throw Error(ErrorKind::kInvalidArgument, "r must be nonnegative");
  if (r > 0 && !(w0 > 0.0)) throw Error(ErrorKind::kInvalidWeight, "w0 must be positive");
  const auto& pairs = network.pattern().pairs();
  if (static_cast<std::size_t>(r) > pairs.size()) {
    throw Error(ErrorKind::kExhaustedPairs,
                "requested " + std::to_string(r) + " interlinks but only " +
                    std::to_string(pairs.size()) + " admissible pairs");
  }

  GreedyPlan plan;
  plan.w0 = w0;
  plan.r = r;
  const int n = network.n();
  Eigen::MatrixXd lap = network.intralayer_laplacian();
  std::vector<bool> used(pairs.size(), false);
  for (int step = 0; step < r; ++step) {
    const FiedlerData fd = fiedler(lap);
    const Eigen::MatrixXd& v = fd.cluster_basis;
    const double q = static_cast<double>(std::max<Eigen::Index>(v.cols(), 1));

    std::vector<double> score(pairs.size(), -1.0);
    double top = 0.0;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (used[e]) continue;
      score[e] = (v.row(pairs[e].i) - v.row(n + pairs[e].j)).squaredNorm() / q;
      top = std::max(top, score[e]);
    }
    std::size_t pick = pairs.size();
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (!used[e] && score[e] >= top - 1e-12 * std::max(1.0, top)) {
        pick = e;
        break;
      }
    }
    used[pick] = true;
    const int a = pairs[pick].i;
    const int b = n + pairs[pick].j;
    lap(a, a) += w0;
    lap(b, b) += w0;
    lap(a, b) -= w0;
    lap(b, a) -= w0;
    plan.added_edges.push_back(pairs[pick]);
    plan.lambda2_trace.push_back(algebraic_connectivity(lap));
  }
  return plan;
}

bool average_laplacian_condition(const Eigen::MatrixXd& l1, const Eigen::MatrixXd& l2) {
  if (l1.rows() != l2.rows() || l1.cols() != l2.cols()) {
    throw Error(ErrorKind::kSizeMismatch, "average Laplacian needs equal layer sizes");
  }
  const double avg = algebraic_connectivity(0.5 * (l1 + l2));
  return avg > std::max(algebraic_connectivity(l1), algebraic_connectivity(l2));
}

bool average_laplacian_condition(const LayerGraph& layer1, const LayerGraph& layer2) {
  return average_laplacian_condition(layer1.laplacian(), layer2.laplacian());
}

}  // namespace mlconn
