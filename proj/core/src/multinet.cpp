#include "mlconn/multinet.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mlconn/error.hpp"

namespace mlconn {

namespace {

std::string pair_text(int i, int j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

void add_edge_term(Eigen::MatrixXd& mat, int a, int b, double w) {
  mat(a, a) += w;
  mat(b, b) += w;
  mat(a, b) -= w;
  mat(b, a) -= w;
}

}  // namespace

LayerGraph::LayerGraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1) {
    throw Error(ErrorKind::kInvalidGraph, "layer needs at least one node");
  }
  std::set<std::pair<int, int>> seen;
  for (Edge& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= node_count_) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "edge " + pair_text(e.i, e.j) + " outside layer of " +
                      std::to_string(node_count_) + " nodes");
    }
    if (e.i == e.j) {
      throw Error(ErrorKind::kInvalidGraph,
                  "self-loop at node " + std::to_string(e.i));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::kInvalidWeight,
                  "edge " + pair_text(e.i, e.j) + " has invalid weight");
    }
    if (!seen.emplace(e.i, e.j).second) {
      throw Error(ErrorKind::kInvalidGraph,
                  "duplicate edge " + pair_text(e.i, e.j));
    }
  }
}

Eigen::MatrixXd LayerGraph::laplacian() const {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(node_count_, node_count_);
  for (const Edge& e : edges_) add_edge_term(lap, e.i, e.j, e.weight);
  return lap;
}

LayerGraph LayerGraph::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorKind::kInvalidWeight, "scale factor must be positive");
  }
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.weight *= factor;
  return LayerGraph(node_count_, std::move(edges));
}

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::kAllPairs: return "all";
    case PatternKind::kKToK: return "k2k";
    case PatternKind::kOneToOne: return "one2one";
    case PatternKind::kExplicit: return "explicit";
  }
  return "explicit";
}

InterlayerPattern::InterlayerPattern(PatternKind kind, int k, int n, int m,
                                     std::vector<NodePair> pairs)
    : kind_(kind), k_(k), n_(n), m_(m), pairs_(std::move(pairs)) {
  if (n_ < 1 || m_ < 1) {
    throw Error(ErrorKind::kInvalidArgument, "layer sizes must be positive");
  }
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t t = 0; t < pairs_.size(); ++t) {
    const NodePair& p = pairs_[t];
    if (p.i < 0 || p.i >= n_ || p.j < 0 || p.j >= m_) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "interlink " + pair_text(p.i, p.j) + " outside " +
                      std::to_string(n_) + "+" + std::to_string(m_) +
                      " nodes");
    }
    if (t > 0 && pairs_[t - 1] == p) {
      throw Error(ErrorKind::kInvalidGraph,
                  "duplicate interlink " + pair_text(p.i, p.j));
    }
  }
}

InterlayerPattern InterlayerPattern::all_pairs(int n, int m) {
  std::vector<NodePair> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max(n, 0)) *
                static_cast<std::size_t>(std::max(m, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) pairs.push_back({i, j});
  return InterlayerPattern(PatternKind::kAllPairs, 0, n, m, std::move(pairs));
}

InterlayerPattern InterlayerPattern::k_to_k(int n, int m, int k) {
  if (n != m) {
    throw Error(ErrorKind::kInvalidArgument,
                "k-to-k pattern needs equal layer sizes");
  }
  if (k < 1 || k > n) {
    throw Error(ErrorKind::kInvalidArgument,
                "k-to-k pattern needs 1 <= k <= n");
  }
  std::vector<NodePair> pairs;
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) pairs.push_back({i, (i + t) % n});
  return InterlayerPattern(PatternKind::kKToK, k, n, m, std::move(pairs));
}

InterlayerPattern InterlayerPattern::one_to_one(int n, int m) {
  if (n != m) {
    throw Error(ErrorKind::kInvalidArgument,
                "one-to-one pattern needs equal layer sizes");
  }
  std::vector<NodePair> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back({i, i});
  return InterlayerPattern(PatternKind::kOneToOne, 1, n, m, std::move(pairs));
}

InterlayerPattern InterlayerPattern::explicit_pairs(int n, int m,
                                                    std::vector<NodePair> pairs) {
  return InterlayerPattern(PatternKind::kExplicit, 0, n, m, std::move(pairs));
}

bool InterlayerPattern::contains(NodePair p) const { return index_of(p) >= 0; }

int InterlayerPattern::index_of(NodePair p) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
  if (it == pairs_.end() || *it != p) return -1;
  return static_cast<int>(it - pairs_.begin());
}

MultilayerNetwork::MultilayerNetwork(LayerGraph layer1, LayerGraph layer2,
                                     InterlayerPattern pattern)
    : layer1_(std::move(layer1)),
      layer2_(std::move(layer2)),
      pattern_(std::move(pattern)) {
  if (pattern_.n() != layer1_.node_count() ||
      pattern_.m() != layer2_.node_count()) {
    throw Error(ErrorKind::kSizeMismatch,
                "interlayer pattern sized for " + std::to_string(pattern_.n()) +
                    "+" + std::to_string(pattern_.m()) + " but layers have " +
                    std::to_string(layer1_.node_count()) + "+" +
                    std::to_string(layer2_.node_count()) + " nodes");
  }
}

MultilayerNetwork MultilayerNetwork::with_pattern(InterlayerPattern pattern) const {
  return MultilayerNetwork(layer1_, layer2_, std::move(pattern));
}

Eigen::MatrixXd MultilayerNetwork::intralayer_laplacian() const {
  const int n = this->n();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(size(), size());
  for (const Edge& e : layer1_.edges()) add_edge_term(lap, e.i, e.j, e.weight);
  for (const Edge& e : layer2_.edges())
    add_edge_term(lap, n + e.i, n + e.j, e.weight);
  return lap;
}

double WeightAssignment::total() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

Eigen::MatrixXd WeightAssignment::weight_matrix(int n, int m) const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, m);
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= m) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "interlink " + pair_text(e.i, e.j) + " outside layers");
    }
    w(e.i, e.j) += e.weight;
  }
  return w;
}

Eigen::VectorXd WeightAssignment::aligned_with(
    const InterlayerPattern& pattern) const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pattern.size()));
  for (const auto& e : entries) {
    const int idx = pattern.index_of({e.i, e.j});
    if (idx >= 0) w(idx) += e.weight;
  }
  return w;
}

WeightAssignment WeightAssignment::from_vector(const InterlayerPattern& pattern,
                                               const Eigen::VectorXd& weights,
                                               double budget) {
  if (static_cast<std::size_t>(weights.size()) != pattern.size()) {
    throw Error(ErrorKind::kSizeMismatch,
                "weight vector does not match pattern size");
  }
  WeightAssignment out;
  out.budget = budget;
  out.entries.reserve(pattern.size());
  for (std::size_t t = 0; t < pattern.size(); ++t) {
    const NodePair& p = pattern.pairs()[t];
    out.entries.push_back({p.i, p.j, weights(static_cast<Eigen::Index>(t))});
  }
  return out;
}

SupraLaplacian build_supra_laplacian(const MultilayerNetwork& network,
                                     const WeightAssignment& assignment) {
  const int n = network.n();
  const int m = network.m();
  SupraLaplacian out;
  out.n = n;
  out.m = m;
  out.matrix = network.intralayer_laplacian();
  for (const auto& e : assignment.entries) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= m) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  "interlink " + pair_text(e.i, e.j) + " references a missing node");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::kInvalidWeight,
                  "interlink " + pair_text(e.i, e.j) + " has negative weight");
    }
    add_edge_term(out.matrix, e.i, n + e.j, e.weight);
  }
  std::ostringstream os;
  os << "n=" << n << " m=" << m << " pattern=" << to_string(network.pattern().kind())
     << " links=" << assignment.entries.size() << " budget=" << assignment.budget;
  out.provenance = os.str();
  return out;
}

WeightAssignment uniform_assignment(const InterlayerPattern& pattern,
                                    double budget) {
  if (!(budget >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "budget must be nonnegative");
  }
  if (pattern.empty()) {
    if (budget > 0.0) {
      throw Error(ErrorKind::kEmptyPattern,
                  "cannot spread a positive budget over an empty pattern");
    }
    return WeightAssignment{{}, budget};
  }
  const double w = budget / static_cast<double>(pattern.size());
  return WeightAssignment::from_vector(
      pattern, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(pattern.size()), w),
      budget);
}

AssignmentReport validate_assignment(const MultilayerNetwork& network,
                                     const WeightAssignment& assignment) {
  AssignmentReport report;
  std::set<NodePair> seen;
  for (const auto& e : assignment.entries) {
    const NodePair p{e.i, e.j};
    if (e.i < 0 || e.i >= network.n() || e.j < 0 || e.j >= network.m()) {
      report.violations.push_back({ViolationKind::kIndex, p, e.weight,
                                   "pair " + pair_text(e.i, e.j) + " references a missing node"});
      continue;
    }
    if (!seen.insert(p).second) {
      report.violations.push_back({ViolationKind::kDuplicate, p, e.weight,
                                   "pair " + pair_text(e.i, e.j) + " listed twice"});
    }
    if (!(e.weight >= 0.0)) {
      report.violations.push_back({ViolationKind::kNegativeWeight, p, e.weight,
                                   "pair " + pair_text(e.i, e.j) + " has negative weight"});
    }
    if (e.weight != 0.0 && !network.pattern().contains(p)) {
      report.violations.push_back({ViolationKind::kSupport, p, e.weight,
                                   "pair " + pair_text(e.i, e.j) +
                                       " carries weight outside the admissible set"});
    }
  }
  const double residual = assignment.total() - assignment.budget;
  if (std::abs(residual) > 1e-12 * std::max(1.0, std::abs(assignment.budget))) {
    std::ostringstream os;
    os << "weights sum to budget " << (residual > 0 ? "+ " : "- ")
       << std::abs(residual);
    report.violations.push_back({ViolationKind::kBudget, {}, residual, os.str()});
  }
  return report;
}

SupraBlocks extract_blocks(const SupraLaplacian& laplacian) {
  const int n = laplacian.n;
  const int m = laplacian.m;
  const Eigen::MatrixXd& a = laplacian.matrix;
  std::vector<Edge> e1, e2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) != 0.0) e1.push_back({i, j, -a(i, j)});
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (a(n + i, n + j) != 0.0) e2.push_back({i, j, -a(n + i, n + j)});
  SupraBlocks out{LayerGraph(n, std::move(e1)), LayerGraph(m, std::move(e2)),
                  -a.block(0, n, n, m)};
  return out;
}

}  // namespace mlconn
