#pragma once

#include <cstdint>
#include <vector>

namespace mlconn {

/// Dinic max-flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  /// Returns the arc id, usable with flow_on().
  int add_arc(int from, int to, std::int64_t capacity);
  std::int64_t solve(int source, int sink);
  std::int64_t flow_on(int arc) const;

 private:
  struct Arc {
    int to;
    int rev;
    std::int64_t cap;
    std::int64_t initial;
  };

  bool build_levels(int source, int sink);
  std::int64_t push(int node, int sink, std::int64_t limit);

  std::vector<std::vector<Arc>> graph_;
  std::vector<std::pair<int, int>> arc_index_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace mlconn
