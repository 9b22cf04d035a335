#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tclust/level_graph.hpp"
#include "tclust/sampling.hpp"

namespace tclust {

struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t lower = 0;
  std::int64_t capacity = 0;
};

// Directed network with per-edge lower bounds and capacities. Node 0 is the
// source and node 1 the sink. Nodes built from a temporal sampling remember
// the level vertex they stand for (tail and head of a split vertex both map
// to the same vertex).
class FlowNetwork {
 public:
  FlowNetwork();

  std::size_t source() const { return 0; }
  std::size_t sink() const { return 1; }
  std::size_t node_count() const { return vertex_of_.size(); }

  std::size_t add_node(std::optional<LevelVertex> vertex = std::nullopt);
  // Returns the edge index. Throws InvalidArgumentError on bad endpoints or
  // on lower > capacity.
  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t lower,
                       std::int64_t capacity);

  const std::vector<FlowEdge>& edges() const { return edges_; }
  // Outgoing edge indices of a node, in insertion order.
  const std::vector<std::size_t>& out_edges(std::size_t node) const {
    return out_[node];
  }
  std::optional<LevelVertex> vertex_of(std::size_t node) const {
    return vertex_of_.at(node);
  }

  nlohmann::json to_json() const;

 private:
  std::vector<FlowEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::optional<LevelVertex>> vertex_of_;
};

// N_gamma(P, C): the layered graph G_gamma(P) with every center vertex split
// into a tail -> head edge of lower bound 1, a source feeding the first level
// and the last level draining into the sink. "Infinite" capacity is n, the
// size of the sampling. centers[i] must be a subset of level i, else throws
// InvalidCentersError.
FlowNetwork build_network(const TemporalSampling& p,
                          const std::vector<std::vector<PointId>>& centers,
                          double gamma);

struct IntegralFlow {
  std::vector<std::int64_t> edge_flow;
  std::int64_t value = 0;
};

// Bounds hold on every edge and flow is conserved at every node other than
// the source and sink.
bool is_feasible_flow(const FlowNetwork& net, const IntegralFlow& f);

// Minimum-value integral flow meeting every lower bound, or nullopt when no
// feasible flow exists. Finds a feasible flow through the usual excess/deficit
// reduction, then cancels as much sink-to-source flow as the residual allows.
std::optional<IntegralFlow> min_feasible_flow(const FlowNetwork& net);

// Splits f into f.value unit source-to-sink paths (lists of edge indices).
// Walks from the source, always taking the lowest-indexed outgoing edge that
// still carries flow. Throws InvariantError if f is not conserving or leaves
// flow on cycles.
std::vector<std::vector<std::size_t>> decompose_unit_paths(
    const FlowNetwork& net, const IntegralFlow& f);

// Unit paths of a network built by build_network, read back as trajectories.
std::vector<Trajectory> decompose_paths(const FlowNetwork& net,
                                        const IntegralFlow& f,
                                        const TemporalSampling& p);

}  // namespace tclust
