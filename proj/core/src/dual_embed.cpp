#include "mlconn/dual_embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mlconn/barrier.hpp"
#include "mlconn/error.hpp"
#include "mlconn/spectra.hpp"
#include "mlconn/symmetric_eigen.hpp"

namespace mlconn {

namespace {

constexpr int kMaxCluster = 6;

// S packed by its upper triangle, (a, b) with a <= b.
struct Packing {
  explicit Packing(int q) : q(q) {
    for (int a = 0; a < q; ++a)
      for (int b = a; b < q; ++b) index.emplace_back(a, b);
  }
  Eigen::Index size() const { return static_cast<Eigen::Index>(index.size()); }

  Eigen::MatrixXd unpack(const Eigen::VectorXd& s) const {
    Eigen::MatrixXd out(q, q);
    for (std::size_t k = 0; k < index.size(); ++k) {
      const auto [a, b] = index[k];
      out(a, b) = out(b, a) = s(static_cast<Eigen::Index>(k));
    }
    return out;
  }

  // Coefficients c_k with <M, S> = sum_k c_k s_k.
  Eigen::VectorXd inner(const Eigen::MatrixXd& mtx) const {
    Eigen::VectorXd out(size());
    for (std::size_t k = 0; k < index.size(); ++k) {
      const auto [a, b] = index[k];
      out(static_cast<Eigen::Index>(k)) = a == b ? mtx(a, a) : 2.0 * mtx(a, b);
    }
    return out;
  }

  int q;
  std::vector<std::pair<int, int>> index;
};

// min <K, S> + c nu  s.t.  b_e^T S b_e <= nu,  S >= 0,  tr S = 1.
Eigen::MatrixXd optimal_cluster_weighting(const Eigen::MatrixXd& k, const Eigen::MatrixXd& b,
                                          double budget) {
  const int q = static_cast<int>(k.rows());
  if (q == 1) return Eigen::MatrixXd::Ones(1, 1);
  if (budget <= 0.0 || b.cols() == 0) {
    const SymmetricEigen eig = symmetric_eigen(k);
    return eig.vectors.col(0) * eig.vectors.col(0).transpose();
  }

  const Packing pack(q);
  const Eigen::Index r = pack.size();
  const Eigen::Index p = b.cols();
  const Eigen::VectorXd kappa = pack.inner(k);
  Eigen::MatrixXd psi(r + 1, p);
  for (Eigen::Index e = 0; e < p; ++e) {
    psi.col(e).head(r) = pack.inner(b.col(e) * b.col(e).transpose());
    psi(r, e) = -1.0;
  }
  std::vector<Eigen::MatrixXd> basis;
  for (const auto& [a, c] : pack.index) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(q, q);
    e(a, c) = e(c, a) = 1.0;
    basis.push_back(std::move(e));
  }

  double t = 1.0;
  const auto oracle = [&](const Eigen::VectorXd& x) {
    barrier::NewtonSystem sys;
    const Eigen::MatrixXd s = pack.unpack(x.head(r));
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) return sys;
    const Eigen::VectorXd slack = -(psi.transpose() * x);
    if ((slack.array() <= 0.0).any()) return sys;
    const Eigen::MatrixXd sinv = llt.solve(Eigen::MatrixXd::Identity(q, q));

    sys.grad = Eigen::VectorXd::Zero(r + 1);
    sys.grad.head(r) = t * kappa - pack.inner(sinv);
    sys.grad(r) = t * budget;
    const Eigen::VectorXd inv = slack.cwiseInverse();
    sys.grad += psi * inv;

    std::vector<Eigen::MatrixXd> prod;
    prod.reserve(basis.size());
    for (const auto& e : basis) prod.push_back(sinv * e);
    sys.hess = psi * inv.cwiseAbs2().asDiagonal() * psi.transpose();
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j)
        sys.hess(i, j) += (prod[static_cast<std::size_t>(i)] * prod[static_cast<std::size_t>(j)]).trace();
    sys.feasible = sys.grad.allFinite() && sys.hess.allFinite();
    return sys;
  };

  Eigen::VectorXd eq = Eigen::VectorXd::Zero(r + 1);
  for (Eigen::Index i = 0; i < r; ++i)
    if (pack.index[static_cast<std::size_t>(i)].first == pack.index[static_cast<std::size_t>(i)].second) eq(i) = 1.0;
  Eigen::VectorXd x = eq / q;
  const double worst = (psi.topRows(r).transpose() * x.head(r)).maxCoeff();
  x(r) = worst + std::max(1e-3, 0.1 * std::abs(worst));

  const double terms = static_cast<double>(q + p);
  const double scale = std::max(1.0, std::abs(kappa.dot(x.head(r)) + budget * x(r)));
  t = terms / scale;
  for (int round = 0; round < 40; ++round) {
    const barrier::CenteringOutcome c = barrier::center(oracle, x, eq, 1e-12, 200);
    x = c.x;
    if (!c.converged || terms / t <= 1e-13 * scale) break;
    t *= 10.0;
  }
  return pack.unpack(x.head(r));
}

Eigen::VectorXd column_sums(const Eigen::MatrixXd& u) { return u.colwise().sum().transpose(); }

double max_interlink_distance(const MultilayerNetwork& net, const Eigen::MatrixXd& u) {
  double best = 0.0;
  for (const NodePair& pr : net.pattern().pairs())
    best = std::max(best, (u.row(pr.i) - u.row(net.n() + pr.j)).squaredNorm());
  return best;
}

}  // namespace

std::string to_string(EmbeddingCheck check) {
  switch (check) {
    case EmbeddingCheck::kCentering: return "centering";
    case EmbeddingCheck::kNormalization: return "normalization";
    case EmbeddingCheck::kInterlinkDistance: return "interlink_distance";
    case EmbeddingCheck::kPositiveSemidefinite: return "psd";
    case EmbeddingCheck::kGram: return "gram";
    case EmbeddingCheck::kObjective: return "objective";
    case EmbeddingCheck::kSlackness: return "slackness";
  }
  return "unknown";
}

bool EmbeddingReport::has(EmbeddingCheck check) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const EmbeddingViolation& v) { return v.check == check; });
}

EmbeddingSolution recover_embedding(const MultilayerNetwork& network,
                                    const OptimizationResult& result) {
  if (!result.converged) {
    throw Error(ErrorKind::kUnconverged, "embedding needs a converged optimization result");
  }
  const SupraLaplacian lap = build_supra_laplacian(network, result.assignment);
  const FiedlerData fd = fiedler(lap.matrix);
  const int q = fd.multiplicity;
  if (q > kMaxCluster) {
    throw Error(ErrorKind::kClusterTooLarge,
                "lambda2 cluster has " + std::to_string(q) + " vectors (limit 6)");
  }
  if (q < 1) throw Error(ErrorKind::kDegenerateCase, "empty lambda2 eigencluster");

  const Eigen::MatrixXd& v = fd.cluster_basis;
  const Eigen::MatrixXd l0 = network.intralayer_laplacian();
  const auto& pairs = network.pattern().pairs();
  Eigen::MatrixXd b(q, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t e = 0; e < pairs.size(); ++e)
    b.col(static_cast<Eigen::Index>(e)) =
        (v.row(pairs[e].i) - v.row(network.n() + pairs[e].j)).transpose();
  const double budget = result.assignment.budget;
  const Eigen::MatrixXd s =
      optimal_cluster_weighting(v.transpose() * l0 * v, b, budget);

  // Principal axes of S; negligible directions are dropped and the trace
  // restored to one.
  const SymmetricEigen eig = symmetric_eigen(s);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = q - 1; k >= 0; --k)
    if (eig.values(k) > 1e-10) keep.push_back(k);
  double kept = 0.0;
  for (Eigen::Index k : keep) kept += eig.values(k);

  EmbeddingSolution out;
  out.n = network.n();
  out.m = network.m();
  out.assignment = result.assignment;
  out.lambda2 = result.lambda2_star;
  out.coordinates.resize(network.size(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const Eigen::Index k = keep[c];
    out.coordinates.col(static_cast<Eigen::Index>(c)) =
        std::sqrt(eig.values(k) / kept) * (v * eig.vectors.col(k));
    fix_sign(out.coordinates.col(static_cast<Eigen::Index>(c)));
  }
  out.dual_matrix = out.coordinates * out.coordinates.transpose();
  out.nu = max_interlink_distance(network, out.coordinates);
  out.objective = budget * out.nu + (out.coordinates.transpose() * l0 * out.coordinates).trace();

  if (std::abs(out.objective - result.lambda2_star) > 1e-4 * std::max(1.0, result.lambda2_star)) {
    throw Error(ErrorKind::kDualityGapTooLarge,
                "dual objective " + std::to_string(out.objective) + " misses lambda2 " +
                    std::to_string(result.lambda2_star));
  }
  return out;
}

EmbeddingReport verify_embedding(const MultilayerNetwork& network, double budget,
                                 const EmbeddingSolution& solution) {
  EmbeddingReport rep;
  const auto add = [&](EmbeddingCheck c, double value, std::string msg) {
    rep.violations.push_back({c, value, std::move(msg)});
  };
  const Eigen::MatrixXd& u = solution.coordinates;
  if (u.rows() != network.size()) {
    add(EmbeddingCheck::kGram, static_cast<double>(u.rows()), "coordinate count differs from node count");
    return rep;
  }

  const double centre = u.cols() > 0 ? column_sums(u).norm() : 0.0;
  if (centre > 1e-8) add(EmbeddingCheck::kCentering, centre, "coordinates do not sum to zero");
  const double norm = u.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-8) add(EmbeddingCheck::kNormalization, norm - 1.0, "squared norms do not sum to one");

  for (const NodePair& pr : network.pattern().pairs()) {
    const double d = (u.row(pr.i) - u.row(network.n() + pr.j)).squaredNorm();
    if (d > solution.nu + 1e-8)
      add(EmbeddingCheck::kInterlinkDistance, d - solution.nu,
          "pair (" + std::to_string(pr.i) + "," + std::to_string(pr.j) + ") exceeds nu");
  }

  const Eigen::MatrixXd& x = solution.dual_matrix;
  if (x.rows() != network.size() || x.cols() != network.size()) {
    add(EmbeddingCheck::kGram, 0.0, "dual matrix has the wrong shape");
  } else {
    const double gram = (x - u * u.transpose()).cwiseAbs().maxCoeff();
    if (gram > 1e-10) add(EmbeddingCheck::kGram, gram, "X differs from U U^T");
    const double low = symmetric_eigen(0.5 * (x + x.transpose())).values(0);
    if (low < -1e-10) add(EmbeddingCheck::kPositiveSemidefinite, low, "X has a negative eigenvalue");
  }

  const double l2 =
      algebraic_connectivity(build_supra_laplacian(network, solution.assignment).matrix);
  const double objective =
      budget * solution.nu + (u.transpose() * network.intralayer_laplacian() * u).trace();
  if (std::abs(objective - l2) > 1e-5 * std::max(1.0, l2))
    add(EmbeddingCheck::kObjective, objective - l2, "dual objective differs from lambda2");

  for (const InterlinkWeight& e : solution.assignment.entries) {
    if (!(e.weight > 1e-8) || e.i < 0 || e.i >= network.n() || e.j < 0 || e.j >= network.m()) continue;
    const double d = (u.row(e.i) - u.row(network.n() + e.j)).squaredNorm();
    if (std::abs(d - solution.nu) > 1e-6)
      add(EmbeddingCheck::kSlackness, d - solution.nu,
          "weighted pair (" + std::to_string(e.i) + "," + std::to_string(e.j) +
              ") is not at distance nu");
  }
  return rep;
}

int embedding_dimension(const EmbeddingSolution& solution, double tol) {
  const Eigen::MatrixXd& x = solution.dual_matrix;
  if (x.size() == 0) return 0;
  const SymmetricEigen eig = symmetric_eigen(0.5 * (x + x.transpose()));
  return static_cast<int>((eig.values.array() > tol).count());
}

ScaledEmbedding scale_solution(const EmbeddingSolution& solution, double budget, double lambda2) {
  if (!(lambda2 > 0.0)) throw Error(ErrorKind::kZeroLambda, "scaling needs lambda2 > 0");
  if (!(budget > 0.0)) throw Error(ErrorKind::kInvalidArgument, "scaling needs a positive budget");
  ScaledEmbedding out;
  out.coordinates = solution.coordinates / std::sqrt(lambda2);
  out.weights.resize(static_cast<Eigen::Index>(solution.assignment.entries.size()));
  for (std::size_t e = 0; e < solution.assignment.entries.size(); ++e)
    out.weights(static_cast<Eigen::Index>(e)) =
        solution.assignment.entries[e].weight / (budget * lambda2);
  const int size = solution.n + solution.m;
  out.mu_hat = size > 0 ? (lambda2 / size) / lambda2 : 0.0;
  out.max_interlink_constraint = solution.objective / lambda2;
  return out;
}

double within_layer_variance(const EmbeddingSolution& solution, int layer) {
  if (layer != 1 && layer != 2) throw Error(ErrorKind::kInvalidArgument, "layer must be 1 or 2");
  const Eigen::Index start = layer == 1 ? 0 : solution.n;
  const Eigen::Index count = layer == 1 ? solution.n : solution.m;
  if (count == 0 || solution.coordinates.cols() == 0) return 0.0;
  const Eigen::MatrixXd block = solution.coordinates.middleRows(start, count);
  const Eigen::RowVectorXd mean = block.colwise().mean();
  return (block.rowwise() - mean).squaredNorm() / static_cast<double>(count);
}

}  // namespace mlconn
