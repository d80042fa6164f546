#pragma once

// Layer generators for experiments and tests. Random generators are
// deterministic functions of their seed (std::mt19937_64).

#include <cstdint>

#include "mlconn/multinet.hpp"

namespace mlconn {

LayerGraph path_graph(int n, double weight = 1.0);
LayerGraph cycle_graph(int n, double weight = 1.0);
LayerGraph complete_graph(int n, double weight = 1.0);

/// G(n, p) with unit weights.
LayerGraph erdos_renyi(int n, double p, std::uint64_t seed);

/// Ring lattice with k neighbours per side, each edge rewired with
/// probability beta.
LayerGraph watts_strogatz(int n, int k, double beta, std::uint64_t seed);

/// Unit-square random geometric graph: nodes within `radius` are linked.
LayerGraph random_geometric(int n, double radius, std::uint64_t seed);

bool is_connected(const LayerGraph& layer);

/// Retries seeds seed, seed+1, ... until a generator returns a connected
/// graph. Throws kInvalidGraph after `attempts` failures.
template <typename Gen>
LayerGraph first_connected(Gen&& gen, std::uint64_t seed, int attempts = 1000);

/// Uniformly rescales weights so lambda2 equals `target` (> 0). The layer
/// must be connected.
LayerGraph scale_to_lambda2(const LayerGraph& layer, double target);

}  // namespace mlconn

#include "mlconn/error.hpp"

namespace mlconn {

template <typename Gen>
LayerGraph first_connected(Gen&& gen, std::uint64_t seed, int attempts) {
  for (int a = 0; a < attempts; ++a) {
    LayerGraph g = gen(seed + static_cast<std::uint64_t>(a));
    if (is_connected(g)) return g;
  }
  throw Error(ErrorKind::kInvalidGraph, "no connected sample within the attempt budget");
}

}  // namespace mlconn
