#include "mlconn/weight_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "mlconn/barrier.hpp"
#include "mlconn/error.hpp"
#include "mlconn/spectra.hpp"

namespace mlconn {

std::string to_string(StepRule rule) {
  return rule == StepRule::kInteriorPoint ? "interior_point" : "supergradient";
}

std::string to_string(SolveMode mode) {
  return mode == SolveMode::kAnalytic ? "analytic" : "iterative";
}

namespace {

// Orthonormal basis of the complement of the all-ones vector: the last N-1
// columns of the Householder reflector sending 1/sqrt(N) to e_1.
Eigen::MatrixXd complement_basis(int size) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(size));
  Eigen::VectorXd u = Eigen::VectorXd::Constant(size, inv);
  u(0) -= 1.0;
  const double norm = u.norm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(size, size);
  if (norm > 0.0) {
    u /= norm;
    h -= 2.0 * u * u.transpose();
  }
  return h.rightCols(size - 1);
}

// Columns e_i - e_{n+j}, one per admissible pair.
Eigen::MatrixXd incidence(const MultilayerNetwork& net) {
  const auto& pairs = net.pattern().pairs();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(net.size(), static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    b(pairs[e].i, static_cast<Eigen::Index>(e)) = 1.0;
    b(net.n() + pairs[e].j, static_cast<Eigen::Index>(e)) = -1.0;
  }
  return b;
}

struct Evaluation {
  double lambda2 = 0.0;
  int multiplicity = 0;
  FiedlerData fiedler;
};

Evaluation evaluate(const MultilayerNetwork& net, const WeightAssignment& a,
                    const std::optional<double>& cluster_tol) {
  const SupraLaplacian l = build_supra_laplacian(net, a);
  Evaluation ev;
  ev.fiedler = fiedler(l.matrix, cluster_tol);
  ev.lambda2 = ev.fiedler.lambda2;
  ev.multiplicity = ev.fiedler.multiplicity;
  return ev;
}

OptimizationResult finish(const MultilayerNetwork& net, Eigen::VectorXd w,
                          double budget, double certified,
                          int iterations, const SolverOptions& opts) {
  const double sum = w.sum();
  if (sum > 0.0) w *= budget / sum;
  OptimizationResult r;
  r.assignment = WeightAssignment::from_vector(net.pattern(), w, budget);
  const Evaluation ev = evaluate(net, r.assignment, opts.eigen_cluster_tol);
  r.lambda2_star = ev.lambda2;
  r.fiedler_multiplicity = ev.multiplicity;
  r.mu = ev.lambda2 / net.size();
  r.certified_upper = std::max(certified, ev.lambda2);
  r.gap = r.certified_upper - r.lambda2_star;
  r.mode = SolveMode::kIterative;
  r.iterations = iterations;
  r.converged = r.gap <= opts.tol_gap * std::max(1.0, r.lambda2_star);
  return r;
}

// max lambda  s.t.  Q^T L(w) Q - lambda I > 0,  w > 0,  sum w = c.
class InteriorPoint {
 public:
  InteriorPoint(const MultilayerNetwork& net, double budget)
      : budget_(budget), p_(static_cast<Eigen::Index>(net.pattern().size())) {
    const Eigen::MatrixXd q = complement_basis(net.size());
    l0_ = q.transpose() * net.intralayer_laplacian() * q;
    a_ = q.transpose() * incidence(net);
    dim_ = l0_.rows();
  }

  Eigen::Index terms() const { return dim_ + p_; }

  barrier::NewtonSystem system(const Eigen::VectorXd& x, double t) const {
    barrier::NewtonSystem s;
    const auto w = x.head(p_);
    if ((w.array() <= 0.0).any()) return s;
    Eigen::LLT<Eigen::MatrixXd> llt(slack(x));
    if (llt.info() != Eigen::Success) return s;
    const Eigen::MatrixXd finv = llt.solve(Eigen::MatrixXd::Identity(dim_, dim_));
    const Eigen::MatrixXd g = finv * a_;
    const Eigen::MatrixXd mm = a_.transpose() * g;
    const Eigen::VectorXd winv = w.cwiseInverse();

    s.grad.resize(p_ + 1);
    s.grad.head(p_) = -mm.diagonal() - winv;
    s.grad(p_) = -t + finv.trace();
    s.hess.resize(p_ + 1, p_ + 1);
    s.hess.topLeftCorner(p_, p_) = mm.cwiseAbs2();
    s.hess.topLeftCorner(p_, p_).diagonal() += winv.cwiseAbs2();
    const Eigen::VectorXd cross = -g.colwise().squaredNorm().transpose();
    s.hess.col(p_).head(p_) = cross;
    s.hess.row(p_).head(p_) = cross.transpose();
    s.hess(p_, p_) = finv.squaredNorm();
    s.feasible = s.grad.allFinite() && s.hess.allFinite();
    return s;
  }

  // Upper bound <X, L0> + c max_e <X, B_e> from X = F^-1 / tr F^-1.
  double certificate(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd xm;
    if (!normalized_dual(x, xm)) return std::numeric_limits<double>::infinity();
    return l0_.cwiseProduct(xm).sum() + budget_ * pair_loads(xm).maxCoeff();
  }

  // <X, B_e> per admissible pair; empty if x is outside the domain.
  Eigen::VectorXd pair_loads(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd xm;
    if (!normalized_dual(x, xm)) return {};
    return pair_loads(xm);
  }

 private:
  bool normalized_dual(const Eigen::VectorXd& x, Eigen::MatrixXd& xm) const {
    Eigen::LLT<Eigen::MatrixXd> llt(slack(x));
    if (llt.info() != Eigen::Success) return false;
    xm = llt.solve(Eigen::MatrixXd::Identity(dim_, dim_));
    xm /= xm.trace();
    return true;
  }

  Eigen::VectorXd pair_loads(const Eigen::MatrixXd& xm) const {
    return (a_.transpose() * xm * a_).diagonal();
  }

 private:
  Eigen::MatrixXd slack(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd f = l0_ + a_ * x.head(p_).asDiagonal() * a_.transpose();
    f.diagonal().array() -= x(p_);
    return f;
  }

  double budget_;
  Eigen::Index p_;
  Eigen::Index dim_ = 0;
  Eigen::MatrixXd l0_;
  Eigen::MatrixXd a_;
};

OptimizationResult solve_interior_point(const MultilayerNetwork& net, double budget,
                                        Eigen::VectorXd w, const SolverOptions& opts) {
  const InteriorPoint ip(net, budget);
  const Eigen::Index p = w.size();
  const double bound = upper_bound_F(net.n(), net.m(), budget);

  const double start = evaluate(net, WeightAssignment::from_vector(net.pattern(), w, budget),
                                opts.eigen_cluster_tol)
                           .lambda2;
  Eigen::VectorXd x(p + 1);
  x.head(p) = w;
  x(p) = start - std::max(0.25 * std::abs(start), 1e-3 * std::max(bound, 1e-12));

  Eigen::VectorXd eq = Eigen::VectorXd::Ones(p + 1);
  eq(p) = 0.0;
  const double terms = static_cast<double>(ip.terms());
  double t = terms / std::max(bound, 1e-12);
  double best_cert = std::numeric_limits<double>::infinity();
  int steps = 0;
  while (steps < opts.max_iter) {
    const auto oracle = [&](const Eigen::VectorXd& y) { return ip.system(y, t); };
    barrier::CenteringOutcome c = barrier::center(oracle, x, eq, 1e-10, opts.max_iter - steps);
    steps += std::max(c.steps, 1);
    x = std::move(c.x);
    best_cert = std::min(best_cert, ip.certificate(x));
    // Past roughly t = 1e10 rounding in F stalls Newton; stop there.
    if (!c.converged || terms / t <= 1e-10 * std::max(1.0, std::abs(x(p)))) break;
    t *= 10.0;
  }
  OptimizationResult r = finish(net, x.head(p), budget, best_cert, steps, opts);

  // The barrier leaves O(1/t) weight on pairs whose dual load is strictly
  // below the maximum. Zero those, unless that costs more than a hundredth
  // of the gap tolerance.
  const Eigen::VectorXd loads = ip.pair_loads(x);
  if (loads.size() == p) {
    Eigen::VectorXd w = x.head(p);
    const double top = loads.maxCoeff();
    for (Eigen::Index e = 0; e < p; ++e)
      if (w(e) < 1e-5 * w.maxCoeff() && loads(e) < (1.0 - 1e-4) * top) w(e) = 0.0;
    if (w.sum() > 0.0 && (w.array() == 0.0).any()) {
      OptimizationResult pure = finish(net, w, budget, best_cert, steps, opts);
      if (pure.lambda2_star >= r.lambda2_star - 1e-2 * opts.tol_gap * std::max(1.0, r.lambda2_star))
        r = std::move(pure);
    }
  }
  return r;
}

// Euclidean projection onto {w >= 0, sum w = c}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double c) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  double acc = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    acc += s[k];
    const double cand = (acc - c) / static_cast<double>(k + 1);
    if (s[k] - cand > 0.0) theta = cand;
  }
  return (v.array() - theta).max(0.0).matrix();
}

OptimizationResult solve_supergradient(const MultilayerNetwork& net, double budget,
                                       Eigen::VectorXd w, const SolverOptions& opts) {
  const auto& pairs = net.pattern().pairs();
  const Eigen::MatrixXd l0 = net.intralayer_laplacian();
  const int n = net.n();
  Eigen::VectorXd best_w = w;
  double best = -std::numeric_limits<double>::infinity();
  double best_cert = std::numeric_limits<double>::infinity();
  int k = 0;
  for (; k < opts.max_iter; ++k) {
    const Evaluation ev =
        evaluate(net, WeightAssignment::from_vector(net.pattern(), w, budget), opts.eigen_cluster_tol);
    const Eigen::MatrixXd& v = ev.fiedler.cluster_basis;
    const double q = static_cast<double>(std::max<Eigen::Index>(v.cols(), 1));
    Eigen::VectorXd g(w.size());
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const Eigen::RowVectorXd diff = v.row(pairs[e].i) - v.row(n + pairs[e].j);
      g(static_cast<Eigen::Index>(e)) = diff.squaredNorm() / q;
    }
    if (ev.lambda2 > best) {
      best = ev.lambda2;
      best_w = w;
    }
    const double intra = (v.transpose() * l0 * v).trace() / q;
    best_cert = std::min(best_cert, intra + budget * g.maxCoeff());
    if (best_cert - best <= opts.tol_gap * std::max(1.0, best)) break;
    const double gmax = g.maxCoeff();
    if (!(gmax > 0.0)) break;
    const double step = 0.5 * budget / (gmax * std::sqrt(static_cast<double>(k + 1)));
    w = project_simplex(w + step * g, budget);
  }
  return finish(net, best_w, budget, best_cert, k, opts);
}

// When every lambda2 eigencluster vector is constant on one layer, the
// interlink quadratic form on that subspace depends only on the other
// layer's per-node totals. Spreading those totals evenly over the constant
// layer (W = 1 gamma^T / n, or rho 1^T / m) then keeps lambda2 and makes the
// constant layer an invariant block of the dynamics. Applied only when the
// pattern admits the spread weights and lambda2 does not drop.
OptimizationResult canonical_representative(const MultilayerNetwork& net, OptimizationResult r,
                                            const SolverOptions& opts) {
  const int n = net.n();
  const int m = net.m();
  const FiedlerData fd =
      fiedler(build_supra_laplacian(net, r.assignment).matrix, opts.eigen_cluster_tol);
  const Eigen::MatrixXd& v = fd.cluster_basis;
  if (v.cols() == 0) return r;
  const auto flat = [&](Eigen::Index start, Eigen::Index count) {
    const Eigen::MatrixXd block = v.middleRows(start, count);
    return (block.rowwise() - block.colwise().mean()).cwiseAbs().maxCoeff() <= 1e-6;
  };
  const Eigen::MatrixXd w = r.assignment.weight_matrix(n, m);
  const auto& pattern = net.pattern();
  const auto attempt = [&](const Eigen::MatrixXd& spread) -> bool {
    Eigen::VectorXd aligned(static_cast<Eigen::Index>(pattern.size()));
    double placed = 0.0;
    for (std::size_t e = 0; e < pattern.size(); ++e) {
      const NodePair pr = pattern.pairs()[e];
      aligned(static_cast<Eigen::Index>(e)) = spread(pr.i, pr.j);
      placed += spread(pr.i, pr.j);
    }
    if (std::abs(placed - spread.sum()) > 1e-12 * std::max(1.0, spread.sum())) return false;
    OptimizationResult alt = finish(net, aligned, r.assignment.budget, r.certified_upper,
                                    r.iterations, opts);
    if (alt.lambda2_star < r.lambda2_star - 1e-2 * opts.tol_gap * std::max(1.0, r.lambda2_star))
      return false;
    r = std::move(alt);
    return true;
  };
  if (n > 1 && flat(0, n) &&
      attempt(Eigen::VectorXd::Ones(n) * w.colwise().sum() / static_cast<double>(n)))
    return r;
  if (m > 1 && flat(n, m))
    attempt(w.rowwise().sum() * Eigen::RowVectorXd::Ones(m) / static_cast<double>(m));
  return r;
}

void check_budget(double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw Error(ErrorKind::kInvalidArgument, "budget must be finite and nonnegative");
  }
}

}  // namespace

OptimizationResult analytic_optimum(const RegularityWitness& witness, int n,
                                    int m, double budget) {
  if (!witness.feasible || !witness.weights) {
    throw Error(ErrorKind::kNotRegular, "no regular interlink assignment exists for this pattern");
  }
  OptimizationResult r;
  r.assignment = *witness.weights;
  r.lambda2_star = upper_bound_F(n, m, budget);
  r.mu = r.lambda2_star / (n + m);
  r.certified_upper = r.lambda2_star;
  r.gap = 0.0;
  r.mode = SolveMode::kAnalytic;
  r.iterations = 0;
  r.fiedler_multiplicity = 1;
  r.converged = true;
  return r;
}

OptimizationResult maximize_lambda2(const MultilayerNetwork& network, double budget,
                                    const SolverOptions& options,
                                    const std::optional<Eigen::VectorXd>& initial) {
  check_budget(budget);
  if (!(options.tol_gap > 0.0) || options.max_iter < 1) {
    throw Error(ErrorKind::kInvalidArgument, "tol_gap must be positive and max_iter at least 1");
  }
  const InterlayerPattern& pattern = network.pattern();
  if (budget > 0.0 && pattern.empty()) {
    throw Error(ErrorKind::kInfeasiblePattern, "positive budget with no admissible interlinks");
  }
  const int n = network.n();
  const int m = network.m();

  const RegularityWitness witness = regularity_witness(pattern, n, m, budget);
  if (witness.feasible) {
    const Evaluation ev = evaluate(network, *witness.weights, options.eigen_cluster_tol);
    const double bound = upper_bound_F(n, m, budget);
    if (ev.lambda2 >= bound - 1e-9 * std::max(1.0, bound)) {
      OptimizationResult r = analytic_optimum(witness, n, m, budget);
      r.fiedler_multiplicity = ev.multiplicity;
      return r;
    }
  }

  const Eigen::Index p = static_cast<Eigen::Index>(pattern.size());
  if (p == 1) {
    OptimizationResult r = finish(network, Eigen::VectorXd::Constant(1, budget), budget,
                                  -std::numeric_limits<double>::infinity(), 0, options);
    r.converged = true;
    return r;
  }

  Eigen::VectorXd w = Eigen::VectorXd::Constant(p, budget / static_cast<double>(p));
  if (initial && initial->size() == p && (initial->array() >= 0.0).all() && initial->sum() > 0.0) {
    w = 0.5 * w + 0.5 * (*initial * (budget / initial->sum()));
  }
  OptimizationResult r = options.step_rule == StepRule::kInteriorPoint
                            ? solve_interior_point(network, budget, std::move(w), options)
                            : solve_supergradient(network, budget, std::move(w), options);
  return canonical_representative(network, std::move(r), options);
}

OptimizationResult oracle_grid_optimum(const MultilayerNetwork& network, double budget,
                                       double grid_step) {
  check_budget(budget);
  const InterlayerPattern& pattern = network.pattern();
  const std::size_t p = pattern.size();
  if (p > 4) throw Error(ErrorKind::kTooManyPairs, "grid oracle supports at most four pairs");
  if (!(grid_step > 0.0) || grid_step > 1.0) {
    throw Error(ErrorKind::kInvalidArgument, "grid step must lie in (0, 1]");
  }
  if (budget > 0.0 && p == 0) {
    throw Error(ErrorKind::kInfeasiblePattern, "positive budget with no admissible interlinks");
  }
  const int units = std::max(1, static_cast<int>(std::lround(1.0 / grid_step)));

  Eigen::VectorXd best_w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  double best = -std::numeric_limits<double>::infinity();
  int evaluations = 0;
  std::vector<int> k(p, 0);
  const auto consider = [&] {
    Eigen::VectorXd w(static_cast<Eigen::Index>(p));
    for (std::size_t e = 0; e < p; ++e)
      w(static_cast<Eigen::Index>(e)) = budget * k[e] / static_cast<double>(units);
    const double l2 = algebraic_connectivity(
        build_supra_laplacian(network, WeightAssignment::from_vector(pattern, w, budget)).matrix);
    ++evaluations;
    if (l2 > best) {
      best = l2;
      best_w = w;
    }
  };
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 >= p) {
      if (p > 0) k[pos] = left;
      consider();
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, units);

  OptimizationResult r;
  r.assignment = WeightAssignment::from_vector(pattern, best_w, budget);
  const FiedlerData fd =
      fiedler(build_supra_laplacian(network, r.assignment).matrix);
  r.lambda2_star = fd.lambda2;
  r.fiedler_multiplicity = fd.multiplicity;
  r.mu = fd.lambda2 / network.size();
  r.certified_upper = fd.lambda2;
  r.gap = 0.0;
  r.mode = SolveMode::kIterative;
  r.iterations = evaluations;
  r.converged = true;
  return r;
}

std::vector<std::pair<double, OptimizationResult>> sweep_budget(
    const MultilayerNetwork& network, const std::vector<double>& budgets,
    const SolverOptions& options) {
  if (!std::is_sorted(budgets.begin(), budgets.end())) {
    throw Error(ErrorKind::kInvalidArgument, "budgets must be sorted ascending");
  }
  std::vector<std::pair<double, OptimizationResult>> out;
  out.reserve(budgets.size());
  std::optional<Eigen::VectorXd> previous;
  for (double c : budgets) {
    OptimizationResult r = maximize_lambda2(network, c, options, previous);
    if (options.warm_start && c > 0.0) previous = r.assignment.aligned_with(network.pattern());
    out.emplace_back(c, std::move(r));
  }
  return out;
}

double detect_threshold_numeric(const MultilayerNetwork& network, const SolverOptions& options) {
  const InterlayerPattern& pattern = network.pattern();
  const int n = network.n();
  const int m = network.m();
  if (!regularity_witness(pattern, n, m, 1.0).feasible) {
    throw Error(ErrorKind::kNotRegular, "pattern admits no regular interlink assignment");
  }
  const double l21 = network.n() > 1 ? algebraic_connectivity(network.layer1().laplacian()) : 0.0;
  const double l22 = network.m() > 1 ? algebraic_connectivity(network.layer2().laplacian()) : 0.0;
  if (!(l21 > 1e-12) || !(l22 > 1e-12)) {
    throw Error(ErrorKind::kNoCoalescence,
                "a layer has vanishing algebraic connectivity; no structural transition");
  }

  const auto coalesced = [&](double c) {
    const RegularityWitness w = regularity_witness(pattern, n, m, c);
    const Spectrum s = full_spectrum(build_supra_laplacian(network, *w.weights));
    const double tol = options.eigen_cluster_tol.value_or(default_cluster_tolerance(s));
    const double bound = upper_bound_F(n, m, c);
    if (s.values(1) >= bound - 1e-9 * std::max(1.0, bound) && s.values(2) - s.values(1) > tol)
      return false;
    return maximize_lambda2(network, c, options).fiedler_multiplicity >= 2;
  };

  // Any regular assignment leaves layer-1 vectors orthogonal to 1 with
  // Rayleigh quotient l21 + c/n and layer-2 ones with l22 + c/m, so the
  // transition cannot lie above min(n l22, m l21).
  double hi = std::min(n * l22, m * l21) * (1.0 + 1e-9);
  const double cap = options.threshold_cap_factor * std::max(n * l22, m * l21);
  double lo = 0.0;
  while (!coalesced(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) throw Error(ErrorKind::kNoCoalescence, "no coalescence below the budget cap");
  }
  while (hi - lo > options.threshold_rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (coalesced(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace mlconn
