#pragma once

// Random small networks and a brute-force minimum feasible flow, used as the
// reference for the flow kernel.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "tclust/flow.hpp"

namespace tclust::testing {

// Acyclic network on `nodes` nodes. Edges only go forward in the order
// source, 2, 3, ..., nodes-1, sink; lower bounds are 0 or 1 and capacities
// 1..3.
inline FlowNetwork random_network(std::mt19937_64& rng, std::size_t nodes,
                                  std::size_t edges) {
  FlowNetwork net;
  while (net.node_count() < nodes) net.add_node();
  std::vector<std::size_t> order{0};
  for (std::size_t v = 2; v < nodes; ++v) order.push_back(v);
  order.push_back(1);
  std::uniform_int_distribution<std::size_t> pos(0, order.size() - 1);
  std::uniform_int_distribution<int> cap(1, 3);
  std::bernoulli_distribution lower(0.35);
  for (std::size_t e = 0; e < edges; ++e) {
    std::size_t a = pos(rng);
    std::size_t b = pos(rng);
    while (a == b) b = pos(rng);
    if (a > b) std::swap(a, b);
    net.add_edge(order[a], order[b], lower(rng) ? 1 : 0, cap(rng));
  }
  return net;
}

// Minimum value over every integral flow with lower <= f(e) <= min(cap,
// sum of lower bounds), by exhaustive search. A minimum flow never needs more
// on an edge: each of its unit paths owns a lower-bound edge.
inline std::optional<std::int64_t> brute_min_flow(const FlowNetwork& net) {
  const auto& edges = net.edges();
  std::int64_t total_lower = 0;
  for (const auto& e : edges) total_lower += e.lower;
  std::vector<std::int64_t> f(edges.size(), 0);
  std::optional<std::int64_t> best;
  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (j == edges.size()) {
      std::vector<std::int64_t> balance(net.node_count(), 0);
      for (std::size_t q = 0; q < edges.size(); ++q) {
        balance[edges[q].from] -= f[q];
        balance[edges[q].to] += f[q];
      }
      for (std::size_t v = 2; v < net.node_count(); ++v) {
        if (balance[v] != 0) return;
      }
      const std::int64_t value = -balance[0];
      if (!best || value < *best) best = value;
      return;
    }
    const std::int64_t hi = std::min(edges[j].capacity, total_lower);
    for (std::int64_t x = edges[j].lower; x <= hi; ++x) {
      f[j] = x;
      self(self, j + 1);
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace tclust::testing
