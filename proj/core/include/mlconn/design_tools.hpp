#pragma once

// First-order eigenvalue prediction for interlink increments and greedy
// interlink placement.

#include <vector>

#include <Eigen/Dense>

#include "mlconn/multinet.hpp"

namespace mlconn {

struct PerturbationInput {
  double base_eigenvalue = 0.0;
  /// Unit eigenvector of the unperturbed matrix.
  Eigen::VectorXd base_eigenvector;
  /// Symmetric, zero row sums; the Laplacian of the increment W'.
  Eigen::MatrixXd perturbation;
  double epsilon = 0.0;
  double c0 = 0.0;
  /// Total of W'.
  double c_prime = 0.0;
};

/// Perturbation of L(w0) by the interlink increment W' (n x m) with unit
/// scale epsilon, based at the Fiedler pair of L(w0).
PerturbationInput make_perturbation(const MultilayerNetwork& network,
                                    const WeightAssignment& base,
                                    const Eigen::MatrixXd& w_prime, double epsilon);

/// x0^T L' x0 / |x0|^2. Throws kSizeMismatch on inconsistent shapes.
double rayleigh_increment(const PerturbationInput& input);

/// lambda0 + epsilon * rayleigh_increment(input).
double predicted_eigenvalue(const PerturbationInput& input);

enum class LayerSide { kLayer1, kLayer2 };

/// Increment of the layer Fiedler quadratic form under W':
///   layer2: v^T diag(W'^T 1_n) v,   layer1: u^T diag(W' 1_m) u.
double post_threshold_increment(const Eigen::VectorXd& fiedler_vec,
                                const Eigen::MatrixXd& w_prime, LayerSide side);

struct GreedyPlan {
  std::vector<NodePair> added_edges;
  double w0 = 0.0;
  int r = 0;
  /// lambda2 after each addition.
  std::vector<double> lambda2_trace;
};

/// Adds r interlinks of weight w0 one at a time from the network's pattern,
/// each time taking the unused pair maximizing (1/q) sum_k (v_ki - v_k,n+j)^2
/// over the lambda2 eigencluster v_1..v_q of the current supra-Laplacian.
/// Scores within 1e-12 of the best go to the lexicographically smallest
/// pair. Existing pattern weights are ignored: the start has no interlinks.
/// Throws kExhaustedPairs if r exceeds the pattern size.
GreedyPlan greedy_interlinks(const MultilayerNetwork& network, int r, double w0);

/// lambda2((L1 + L2)/2) > max(lambda2(L1), lambda2(L2)). Throws
/// kSizeMismatch for layers of different size.
bool average_laplacian_condition(const Eigen::MatrixXd& l1, const Eigen::MatrixXd& l2);
bool average_laplacian_condition(const LayerGraph& layer1, const LayerGraph& layer2);

}  // namespace mlconn
