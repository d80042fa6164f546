#include "mlconn/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "mlconn/error.hpp"

namespace mlconn {

MaxFlow::MaxFlow(int node_count)
    : graph_(static_cast<std::size_t>(node_count)),
      level_(static_cast<std::size_t>(node_count)),
      next_(static_cast<std::size_t>(node_count)) {}

int MaxFlow::add_arc(int from, int to, std::int64_t capacity) {
  const int n = static_cast<int>(graph_.size());
  if (from < 0 || from >= n || to < 0 || to >= n || capacity < 0) {
    throw Error(ErrorKind::kInvalidArgument, "bad arc for max-flow");
  }
  auto& out = graph_[static_cast<std::size_t>(from)];
  auto& in = graph_[static_cast<std::size_t>(to)];
  out.push_back({to, static_cast<int>(in.size()) + (from == to ? 1 : 0), capacity, capacity});
  in.push_back({from, static_cast<int>(out.size()) - 1, 0, 0});
  arc_index_.emplace_back(from, static_cast<int>(out.size()) - 1);
  return static_cast<int>(arc_index_.size()) - 1;
}

bool MaxFlow::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : graph_[static_cast<std::size_t>(u)]) {
      if (a.cap > 0 && level_[static_cast<std::size_t>(a.to)] < 0) {
        level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(u)] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

std::int64_t MaxFlow::push(int node, int sink, std::int64_t limit) {
  if (node == sink) return limit;
  auto& arcs = graph_[static_cast<std::size_t>(node)];
  for (std::size_t& i = next_[static_cast<std::size_t>(node)]; i < arcs.size(); ++i) {
    Arc& a = arcs[i];
    if (a.cap <= 0 ||
        level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(node)] + 1)
      continue;
    const std::int64_t got = push(a.to, sink, std::min(limit, a.cap));
    if (got > 0) {
      a.cap -= got;
      graph_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::solve(int source, int sink) {
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (const std::int64_t f =
               push(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

std::int64_t MaxFlow::flow_on(int arc) const {
  const auto [from, idx] = arc_index_.at(static_cast<std::size_t>(arc));
  const Arc& a = graph_[static_cast<std::size_t>(from)][static_cast<std::size_t>(idx)];
  return a.initial - a.cap;
}

}  // namespace mlconn
