#pragma once

#include <optional>

#include <Eigen/Dense>

#include "mlconn/multinet.hpp"

namespace mlconn {

/// All eigenpairs, eigenvalues ascending. Each eigenvector is sign-fixed so
/// its first component with magnitude above 1e-9 is positive.
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

/// Throws kInvalidArgument for non-symmetric input and kConvergenceFailure if
/// the eigen-residual exceeds 1e-9 * max(1, |lambda_N|).
Spectrum full_spectrum(const Eigen::MatrixXd& matrix);
Spectrum full_spectrum(const SupraLaplacian& laplacian);

/// 1e-6 * max(1, lambda_N).
double default_cluster_tolerance(const Spectrum& spectrum);

struct FiedlerData {
  double lambda2 = 0.0;
  /// Unit vector orthogonal to the all-ones vector, sign-fixed.
  Eigen::VectorXd vector;
  int multiplicity = 0;
  double cluster_tolerance = 0.0;
  /// Orthonormal basis (columns) of the lambda2 eigencluster restricted to
  /// the complement of the all-ones vector; column 0 equals `vector`.
  Eigen::MatrixXd cluster_basis;
  /// Eigenvalues that formed the cluster.
  Eigen::VectorXd cluster_values;
};

/// lambda2 and its eigencluster. For a disconnected Laplacian lambda2 is 0
/// and the cluster is the zero eigenspace with the all-ones direction
/// removed. Requires at least two nodes.
FiedlerData fiedler(const Spectrum& spectrum,
                    std::optional<double> cluster_tolerance = std::nullopt);
FiedlerData fiedler(const Eigen::MatrixXd& laplacian,
                    std::optional<double> cluster_tolerance = std::nullopt);

double algebraic_connectivity(const Eigen::MatrixXd& laplacian);

/// lambda2(layer) / node_count; 0 for a single node.
double specific_connectivity(const LayerGraph& layer);

/// Flips `v` so the first component with |v_i| > 1e-9 is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v);

}  // namespace mlconn
