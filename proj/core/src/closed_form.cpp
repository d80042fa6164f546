#include "mlconn/closed_form.hpp"

#include <algorithm>
#include <cmath>

#include "mlconn/error.hpp"
#include "mlconn/maxflow.hpp"

namespace mlconn {

double upper_bound_F(int n, int m, double budget) {
  if (n < 1 || m < 1) {
    throw Error(ErrorKind::kInvalidArgument, "layer sizes must be positive");
  }
  return (1.0 / n + 1.0 / m) * budget;
}

RegularityWitness regularity_witness(const InterlayerPattern& pattern, int n,
                                     int m, double budget) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "budget must be nonnegative");
  }
  if (pattern.n() != n || pattern.m() != m) {
    throw Error(ErrorKind::kSizeMismatch, "pattern does not match layer sizes");
  }
  RegularityWitness out;
  if (budget == 0.0) {
    out.feasible = true;
    out.weights = WeightAssignment::from_vector(
        pattern, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pattern.size())), 0.0);
    return out;
  }
  if (pattern.empty()) return out;

  std::vector<int> deg1(static_cast<std::size_t>(n), 0), deg2(static_cast<std::size_t>(m), 0);
  for (const NodePair& p : pattern.pairs()) {
    ++deg1[static_cast<std::size_t>(p.i)];
    ++deg2[static_cast<std::size_t>(p.j)];
  }
  const bool biregular =
      std::all_of(deg1.begin(), deg1.end(), [&](int d) { return d == deg1[0]; }) &&
      std::all_of(deg2.begin(), deg2.end(), [&](int d) { return d == deg2[0]; }) &&
      deg1[0] > 0 && deg2[0] > 0;
  if (biregular) {
    out.feasible = true;
    out.weights = uniform_assignment(pattern, budget);
    return out;
  }

  // Supplies m per layer-1 node, demands n per layer-2 node: the constant
  // row/column sums c/n and c/m scaled by nm/c.
  const int source = n + m;
  const int sink = n + m + 1;
  MaxFlow flow(n + m + 2);
  const std::int64_t total = static_cast<std::int64_t>(n) * m;
  for (int i = 0; i < n; ++i) flow.add_arc(source, i, m);
  for (int j = 0; j < m; ++j) flow.add_arc(n + j, sink, n);
  std::vector<int> arcs;
  arcs.reserve(pattern.size());
  for (const NodePair& p : pattern.pairs()) arcs.push_back(flow.add_arc(p.i, n + p.j, total));
  if (flow.solve(source, sink) != total) return out;

  Eigen::VectorXd w(static_cast<Eigen::Index>(pattern.size()));
  const double unit = budget / static_cast<double>(total);
  for (std::size_t t = 0; t < arcs.size(); ++t)
    w(static_cast<Eigen::Index>(t)) = static_cast<double>(flow.flow_on(arcs[t])) * unit;
  out.feasible = true;
  out.weights = WeightAssignment::from_vector(pattern, w, budget);
  return out;
}

Eigen::VectorXd uniform_allpairs_spectrum(const Spectrum& layer1,
                                          const Spectrum& layer2, int n, int m,
                                          double budget) {
  if (layer1.size() != n || layer2.size() != m) {
    throw Error(ErrorKind::kSizeMismatch, "layer spectra do not match sizes");
  }
  Eigen::VectorXd out(n + m);
  Eigen::Index k = 0;
  out(k++) = 0.0;
  for (int i = 1; i < n; ++i) out(k++) = layer1.values(i) + budget / n;
  for (int j = 1; j < m; ++j) out(k++) = layer2.values(j) + budget / m;
  out(k++) = upper_bound_F(n, m, budget);
  std::sort(out.begin(), out.end());
  return out;
}

double uniform_lambda2(double l21, double l22, int n, int m, double budget) {
  return std::min({upper_bound_F(n, m, budget), l21 + budget / n, l22 + budget / m});
}

std::string to_string(TransitionCase c) {
  switch (c) {
    case TransitionCase::kCase1: return "Case1";
    case TransitionCase::kCase2: return "Case2";
    case TransitionCase::kCase3: return "Case3";
    case TransitionCase::kDegenerate: return "Degenerate";
  }
  return "Degenerate";
}

ThresholdReport thresholds_allpairs(double l21, double l22, int n, int m) {
  if (!(l21 > 0.0) || !(l22 > 0.0) || n < 1 || m < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "thresholds need positive layer connectivities and sizes");
  }
  const double s1 = l21 / n;
  const double s2 = l22 / m;
  ThresholdReport r;
  if (n == m) r.formulas_used.emplace_back("equal-size: c* = n min(l21, l22)");

  if (std::abs(s1 - s2) <= 1e-12 * std::max(s1, s2)) {
    r.case_label = TransitionCase::kDegenerate;
    r.c_star = n * l22;
    r.formulas_used.emplace_back("degenerate: l21/n = l22/m, all three branches meet at c = n l22");
    return r;
  }
  if (s1 > s2) {
    r.c_star = n * l22;
    if (n > m) {
      r.case_label = TransitionCase::kCase1;
      r.c_star_star = (l21 - l22) / (1.0 / m - 1.0 / n);
      r.formulas_used.emplace_back("c* = n l22");
      r.formulas_used.emplace_back("c** = (1/m - 1/n)^-1 (l21 - l22)");
    } else {
      r.case_label = TransitionCase::kCase3;
      r.formulas_used.emplace_back("c* = n l22");
    }
  } else {
    r.c_star = m * l21;
    if (n >= m) {
      r.case_label = TransitionCase::kCase2;
      r.formulas_used.emplace_back("c* = m l21");
    } else {
      r.case_label = TransitionCase::kCase1;
      r.c_star_star = (l22 - l21) / (1.0 / n - 1.0 / m);
      r.formulas_used.emplace_back("layers exchanged: c* = m l21");
      r.formulas_used.emplace_back("layers exchanged: c** = (1/n - 1/m)^-1 (l22 - l21)");
    }
  }
  return r;
}

SuperdiffusionReport superdiffusion_window(double l21, double l22, int n, int m) {
  if (!(l21 > 0.0) || !(l22 > 0.0) || n < 1 || m < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "super-diffusion check needs positive connectivities and sizes");
  }
  const double s1 = l21 / n;
  const double s2 = l22 / m;
  const double sum = 1.0 / n + 1.0 / m;
  SuperdiffusionReport r;
  if (s1 == s2) {
    r.case_label = TransitionCase::kDegenerate;
    r.inequality_values = {s2, s1, sum * l22};
  } else if (s1 > s2) {
    r.case_label = (n > m) ? TransitionCase::kCase1 : TransitionCase::kCase3;
    r.inequality_values = {s2, s1, sum * l22};
  } else {
    r.case_label = (n >= m) ? TransitionCase::kCase2 : TransitionCase::kCase1;
    r.inequality_values = {s1, s2, sum * l21};
  }
  const auto& v = r.inequality_values;
  r.condition_holds = v[0] < v[1] && v[1] < v[2];
  return r;
}

LayerFiedlerBounds layer_fiedler_bounds(const FiedlerData& layer1,
                                        const FiedlerData& layer2,
                                        const Eigen::MatrixXd& weights) {
  if (weights.rows() != layer1.vector.size() || weights.cols() != layer2.vector.size()) {
    throw Error(ErrorKind::kSizeMismatch, "weight matrix does not match layers");
  }
  const Eigen::VectorXd row = weights.rowwise().sum();
  const Eigen::VectorXd col = weights.colwise().sum().transpose();
  LayerFiedlerBounds b;
  b.bound1 = layer1.lambda2 + layer1.vector.cwiseAbs2().dot(row);
  b.bound2 = layer2.lambda2 + layer2.vector.cwiseAbs2().dot(col);
  return b;
}

LayerFiedlerBounds layer_fiedler_bounds(const MultilayerNetwork& network,
                                        const WeightAssignment& assignment) {
  return layer_fiedler_bounds(fiedler(network.layer1().laplacian()),
                              fiedler(network.layer2().laplacian()),
                              assignment.weight_matrix(network.n(), network.m()));
}

std::pair<double, double> ktok_threshold_bounds(double l2_min, int n) {
  if (!(l2_min >= 0.0) || n < 1) {
    throw Error(ErrorKind::kInvalidArgument, "bracket needs l2_min >= 0 and n >= 1");
  }
  return {n * l2_min / 2.0, n * l2_min};
}

}  // namespace mlconn
