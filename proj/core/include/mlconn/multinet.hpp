#pragma once

// Two-layer networks with an arbitrary bipartite interconnection pattern and
// the supra-Laplacian built from an interlink weight assignment.
//
// Global node numbering: layer-1 node i is i, layer-2 node j is n + j.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mlconn {

struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph on nodes 0..node_count-1. Edges are stored with
/// i < j in insertion order. Self-loops, duplicates and negative weights are
/// rejected at construction.
class LayerGraph {
 public:
  LayerGraph() = default;
  LayerGraph(int node_count, std::vector<Edge> edges);

  int node_count() const noexcept { return node_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  Eigen::MatrixXd laplacian() const;

  /// Same topology with every weight multiplied by `factor` (> 0).
  LayerGraph scaled(double factor) const;

  friend bool operator==(const LayerGraph&, const LayerGraph&) = default;

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
};

/// Cross-layer pair (i in layer 1, j in layer 2).
struct NodePair {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

enum class PatternKind { kAllPairs, kKToK, kOneToOne, kExplicit };

std::string to_string(PatternKind kind);

/// Admissible interlink set. Pairs are kept sorted lexicographically, which
/// fixes the coordinate order used by every solver.
class InterlayerPattern {
 public:
  InterlayerPattern() = default;

  static InterlayerPattern all_pairs(int n, int m);
  /// Circulant k-regular pattern: node i links to (i + t) mod n, t < k.
  /// Requires equal layer sizes.
  static InterlayerPattern k_to_k(int n, int m, int k);
  static InterlayerPattern one_to_one(int n, int m);
  static InterlayerPattern explicit_pairs(int n, int m,
                                          std::vector<NodePair> pairs);

  PatternKind kind() const noexcept { return kind_; }
  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  const std::vector<NodePair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  bool contains(NodePair p) const;
  /// Position of `p` in pairs(), or -1.
  int index_of(NodePair p) const;

  friend bool operator==(const InterlayerPattern&,
                         const InterlayerPattern&) = default;

 private:
  InterlayerPattern(PatternKind kind, int k, int n, int m,
                    std::vector<NodePair> pairs);

  PatternKind kind_ = PatternKind::kExplicit;
  int k_ = 0;
  int n_ = 0;
  int m_ = 0;
  std::vector<NodePair> pairs_;
};

class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;
  MultilayerNetwork(LayerGraph layer1, LayerGraph layer2,
                    InterlayerPattern pattern);

  const LayerGraph& layer1() const noexcept { return layer1_; }
  const LayerGraph& layer2() const noexcept { return layer2_; }
  const InterlayerPattern& pattern() const noexcept { return pattern_; }

  int n() const noexcept { return layer1_.node_count(); }
  int m() const noexcept { return layer2_.node_count(); }
  int size() const noexcept { return n() + m(); }

  MultilayerNetwork with_pattern(InterlayerPattern pattern) const;

  /// Laplacian of the disjoint union of the layers (no interlinks).
  Eigen::MatrixXd intralayer_laplacian() const;

  friend bool operator==(const MultilayerNetwork&,
                         const MultilayerNetwork&) = default;

 private:
  LayerGraph layer1_;
  LayerGraph layer2_;
  InterlayerPattern pattern_;
};

struct InterlinkWeight {
  int i = 0;
  int j = 0;
  double weight = 0.0;

  friend bool operator==(const InterlinkWeight&,
                         const InterlinkWeight&) = default;
};

/// Interlink weights plus the budget they are meant to exhaust. This is a
/// plain value; validate_assignment() checks it against a network.
struct WeightAssignment {
  std::vector<InterlinkWeight> entries;
  double budget = 0.0;

  double total() const;
  /// Dense n x m interlink weight matrix W.
  Eigen::MatrixXd weight_matrix(int n, int m) const;
  /// Weights aligned with pattern.pairs(); entries outside the pattern are
  /// ignored.
  Eigen::VectorXd aligned_with(const InterlayerPattern& pattern) const;

  static WeightAssignment from_vector(const InterlayerPattern& pattern,
                                      const Eigen::VectorXd& weights,
                                      double budget);
};

struct SupraLaplacian {
  Eigen::MatrixXd matrix;
  int n = 0;
  int m = 0;
  std::string provenance;

  int size() const noexcept { return n + m; }
};

SupraLaplacian build_supra_laplacian(const MultilayerNetwork& network,
                                     const WeightAssignment& assignment);

/// Every admissible pair receives c / |pairs|.
WeightAssignment uniform_assignment(const InterlayerPattern& pattern,
                                    double budget);

enum class ViolationKind { kSupport, kNegativeWeight, kBudget, kIndex, kDuplicate };

struct AssignmentViolation {
  ViolationKind kind;
  NodePair pair;        // offending pair (unused for kBudget)
  double value = 0.0;   // weight, or budget residual
  std::string message;
};

struct AssignmentReport {
  std::vector<AssignmentViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

AssignmentReport validate_assignment(const MultilayerNetwork& network,
                                     const WeightAssignment& assignment);

/// Layers and interlink weights read back from the off-diagonal entries of a
/// supra-Laplacian. Zero off-diagonals produce no edge.
struct SupraBlocks {
  LayerGraph layer1;
  LayerGraph layer2;
  Eigen::MatrixXd interlinks;  // n x m
};

SupraBlocks extract_blocks(const SupraLaplacian& laplacian);

}  // namespace mlconn
