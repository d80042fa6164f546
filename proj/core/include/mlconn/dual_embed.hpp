#pragma once

// Dual certificates as graph embeddings. The dual of lambda2 maximization is
//   min c nu + <X, L0>  s.t.  <X, B_ij> <= nu on admissible pairs,
//                             tr X = 1,  X 1 = 0,  X >= 0,
// and X = U U^T places node i at row u_i of U.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlconn/multinet.hpp"
#include "mlconn/weight_opt.hpp"

namespace mlconn {

struct EmbeddingSolution {
  /// N x d, row i is u_i. Columns are principal axes of X, sign-fixed.
  Eigen::MatrixXd coordinates;
  /// Largest squared interlink distance; the dual variable nu = -xi.
  double nu = 0.0;
  /// N x N Gram matrix U U^T.
  Eigen::MatrixXd dual_matrix;
  /// c nu + <X, L0>.
  double objective = 0.0;
  /// Primal data the embedding certifies.
  WeightAssignment assignment;
  double lambda2 = 0.0;
  int n = 0;
  int m = 0;
};

/// Minimizes the dual objective over X = V S V^T with V the lambda2
/// eigencluster of L(w*), S >= 0, tr S = 1. Throws kUnconverged for an
/// unconverged result, kClusterTooLarge when the cluster exceeds six
/// vectors and kDualityGapTooLarge when the objective misses lambda2* by
/// more than 1e-4 relative.
EmbeddingSolution recover_embedding(const MultilayerNetwork& network,
                                    const OptimizationResult& result);

enum class EmbeddingCheck {
  kCentering,
  kNormalization,
  kInterlinkDistance,
  kPositiveSemidefinite,
  kGram,
  kObjective,
  kSlackness,
};

std::string to_string(EmbeddingCheck check);

struct EmbeddingViolation {
  EmbeddingCheck check;
  double value = 0.0;
  std::string message;
};

struct EmbeddingReport {
  std::vector<EmbeddingViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(EmbeddingCheck check) const;
};

/// Centering and normalization (1e-8), interlink distances against nu
/// (1e-8), PSD and Gram consistency of X, objective against lambda2 of the
/// carried weights (1e-5 relative) and complementary slackness on pairs with
/// weight above 1e-8 (1e-6).
EmbeddingReport verify_embedding(const MultilayerNetwork& network, double budget,
                                 const EmbeddingSolution& solution);

/// Numerical rank of the dual matrix: eigenvalues above tol.
int embedding_dimension(const EmbeddingSolution& solution, double tol = 1e-9);

struct ScaledEmbedding {
  Eigen::MatrixXd coordinates;
  /// Scaled weights aligned with solution.assignment.entries.
  Eigen::VectorXd weights;
  double mu_hat = 0.0;
  /// max over interlinks of c |u_i - u_j|^2 + <X, L0> after scaling.
  double max_interlink_constraint = 0.0;
};

/// u / sqrt(lambda2), w / (c lambda2), mu / lambda2. Throws kZeroLambda when
/// lambda2 <= 0.
ScaledEmbedding scale_solution(const EmbeddingSolution& solution, double budget,
                               double lambda2);

/// Mean squared distance of a layer's coordinates (layer 1 or 2) from
/// their centroid.
double within_layer_variance(const EmbeddingSolution& solution, int layer);

}  // namespace mlconn
