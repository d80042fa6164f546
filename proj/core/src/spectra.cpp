#include "mlconn/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mlconn/error.hpp"
#include "mlconn/symmetric_eigen.hpp"

namespace mlconn {

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

Spectrum full_spectrum(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "matrix must be square");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::kInvalidArgument, "matrix must be symmetric");
  }
  SymmetricEigen eig = symmetric_eigen(matrix);
  Spectrum out{std::move(eig.values), std::move(eig.vectors)};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_sign(out.vectors.col(k));

  if (out.values.size() > 0) {
    const double tol = 1e-9 * std::max(1.0, out.values.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd residual =
        matrix * out.vectors - out.vectors * out.values.asDiagonal();
    if (residual.cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorKind::kConvergenceFailure,
                  "eigen-residual above tolerance");
    }
  }
  return out;
}

Spectrum full_spectrum(const SupraLaplacian& laplacian) {
  return full_spectrum(laplacian.matrix);
}

double default_cluster_tolerance(const Spectrum& spectrum) {
  const double top = spectrum.size() > 0 ? spectrum.values(spectrum.size() - 1) : 0.0;
  return 1e-6 * std::max(1.0, top);
}

namespace {

// Modified Gram-Schmidt of `candidates` against the columns already in
// `basis` (two passes). Columns whose residual falls below `drop` are
// discarded.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& seed,
                               const Eigen::MatrixXd& candidates, double drop) {
  std::vector<Eigen::VectorXd> kept;
  std::vector<Eigen::VectorXd> all;
  for (Eigen::Index c = 0; c < seed.cols(); ++c) all.push_back(seed.col(c));
  for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
    Eigen::VectorXd v = candidates.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : all) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm <= drop) continue;
    v /= norm;
    all.push_back(v);
    kept.push_back(v);
  }
  Eigen::MatrixXd out(candidates.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = kept[c];
  return out;
}

}  // namespace

FiedlerData fiedler(const Spectrum& spectrum, std::optional<double> cluster_tolerance) {
  const int n = spectrum.size();
  if (n < 2) {
    throw Error(ErrorKind::kInvalidArgument, "Fiedler data needs at least two nodes");
  }
  FiedlerData out;
  out.cluster_tolerance = cluster_tolerance.value_or(default_cluster_tolerance(spectrum));
  out.lambda2 = spectrum.values(1);

  std::vector<int> members;
  for (int k = 0; k < n; ++k)
    if (std::abs(spectrum.values(k) - out.lambda2) <= out.cluster_tolerance)
      members.push_back(k);

  Eigen::MatrixXd cand(n, static_cast<Eigen::Index>(members.size()));
  out.cluster_values.resize(static_cast<Eigen::Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c) {
    cand.col(static_cast<Eigen::Index>(c)) = spectrum.vectors.col(members[c]);
    out.cluster_values(static_cast<Eigen::Index>(c)) = spectrum.values(members[c]);
  }
  const Eigen::MatrixXd ones =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::MatrixXd basis = orthonormalize(ones, cand, 1e-6);
  const bool includes_kernel = !members.empty() && members.front() == 0;
  const Eigen::Index want = static_cast<Eigen::Index>(members.size()) - (includes_kernel ? 1 : 0);
  if (basis.cols() > want) basis.conservativeResize(Eigen::NoChange, want);

  for (Eigen::Index c = 0; c < basis.cols(); ++c) fix_sign(basis.col(c));
  out.multiplicity = static_cast<int>(basis.cols());
  out.cluster_basis = std::move(basis);
  out.vector = out.multiplicity > 0 ? Eigen::VectorXd(out.cluster_basis.col(0))
                                    : Eigen::VectorXd::Zero(n);
  return out;
}

FiedlerData fiedler(const Eigen::MatrixXd& laplacian, std::optional<double> cluster_tolerance) {
  return fiedler(full_spectrum(laplacian), cluster_tolerance);
}

double algebraic_connectivity(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() < 2) return 0.0;
  return full_spectrum(laplacian).values(1);
}

double specific_connectivity(const LayerGraph& layer) {
  if (layer.node_count() < 2) return 0.0;
  return algebraic_connectivity(layer.laplacian()) / layer.node_count();
}

}  // namespace mlconn
