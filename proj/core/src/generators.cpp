#include "mlconn/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "mlconn/spectra.hpp"

namespace mlconn {

LayerGraph path_graph(int n, double weight) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, weight});
  return LayerGraph(n, std::move(e));
}

LayerGraph cycle_graph(int n, double weight) {
  if (n < 3) return path_graph(n, weight);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n), weight});
  return LayerGraph(n, std::move(e));
}

LayerGraph complete_graph(int n, double weight) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, weight});
  return LayerGraph(n, std::move(e));
}

LayerGraph erdos_renyi(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({i, j, 1.0});
  return LayerGraph(n, std::move(e));
}

LayerGraph watts_strogatz(int n, int k, double beta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution rewire(beta);
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  std::set<std::pair<int, int>> edges;
  const auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (int i = 0; i < n; ++i)
    for (int s = 1; s <= k; ++s)
      if (i != (i + s) % n) edges.insert(key(i, (i + s) % n));
  for (int i = 0; i < n; ++i) {
    for (int s = 1; s <= k; ++s) {
      const auto old = key(i, (i + s) % n);
      if (!edges.count(old) || !rewire(rng)) continue;
      for (int tries = 0; tries < 4 * n; ++tries) {
        const int j = pick(rng);
        if (j == i || edges.count(key(i, j))) continue;
        edges.erase(old);
        edges.insert(key(i, j));
        break;
      }
    }
  }
  std::vector<Edge> e;
  for (const auto& [a, b] : edges) e.push_back({a, b, 1.0});
  return LayerGraph(n, std::move(e));
}

LayerGraph random_geometric(int n, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pos(static_cast<std::size_t>(n));
  for (auto& p : pos) {
    p.first = unit(rng);
    p.second = unit(rng);
  }
  std::vector<Edge> e;
  const double r2 = radius * radius;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = pos[static_cast<std::size_t>(i)].first - pos[static_cast<std::size_t>(j)].first;
      const double dy = pos[static_cast<std::size_t>(i)].second - pos[static_cast<std::size_t>(j)].second;
      if (dx * dx + dy * dy <= r2) e.push_back({i, j, 1.0});
    }
  }
  return LayerGraph(n, std::move(e));
}

bool is_connected(const LayerGraph& layer) {
  const int n = layer.node_count();
  if (n <= 1) return true;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = n;
  for (const Edge& e : layer.edges()) {
    if (!(e.weight > 0.0)) continue;
    const int a = find(e.i);
    const int b = find(e.j);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

LayerGraph scale_to_lambda2(const LayerGraph& layer, double target) {
  if (!(target > 0.0)) throw Error(ErrorKind::kInvalidArgument, "target lambda2 must be positive");
  const double current = algebraic_connectivity(layer.laplacian());
  if (!(current > 1e-12)) throw Error(ErrorKind::kInvalidGraph, "layer is disconnected");
  return layer.scaled(target / current);
}

}  // namespace mlconn
