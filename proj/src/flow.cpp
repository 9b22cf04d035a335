#include "tclust/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "tclust/error.hpp"

namespace tclust {

namespace {

// Residual graph with paired arcs (arc ^ 1 is the reverse) and a
// shortest-augmenting-path max-flow.
class Residual {
 public:
  explicit Residual(std::size_t nodes) : adj_(nodes) {}

  std::size_t add(std::size_t u, std::size_t v, std::int64_t cap) {
    const std::size_t id = to_.size();
    to_.push_back(v);
    cap_.push_back(cap);
    to_.push_back(u);
    cap_.push_back(0);
    adj_[u].push_back(id);
    adj_[v].push_back(id + 1);
    return id;
  }

  std::int64_t& cap(std::size_t arc) { return cap_[arc]; }

  std::int64_t max_flow(std::size_t s, std::size_t t, std::int64_t limit) {
    std::int64_t total = 0;
    std::vector<std::size_t> parent(adj_.size());
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    while (total < limit) {
      std::fill(parent.begin(), parent.end(), none);
      std::queue<std::size_t> q;
      q.push(s);
      parent[s] = none - 1;
      bool found = false;
      while (!q.empty() && !found) {
        const std::size_t u = q.front();
        q.pop();
        for (std::size_t arc : adj_[u]) {
          const std::size_t v = to_[arc];
          if (cap_[arc] <= 0 || parent[v] != none) continue;
          parent[v] = arc;
          if (v == t) {
            found = true;
            break;
          }
          q.push(v);
        }
      }
      if (!found) break;
      std::int64_t push = limit - total;
      for (std::size_t v = t; v != s; v = to_[parent[v] ^ 1]) {
        push = std::min(push, cap_[parent[v]]);
      }
      for (std::size_t v = t; v != s; v = to_[parent[v] ^ 1]) {
        cap_[parent[v]] -= push;
        cap_[parent[v] ^ 1] += push;
      }
      total += push;
    }
    return total;
  }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> to_;
  std::vector<std::int64_t> cap_;
};

std::int64_t net_outflow(const FlowNetwork& net,
                         const std::vector<std::int64_t>& flow,
                         std::size_t node) {
  std::int64_t total = 0;
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    if (net.edges()[e].from == node) total += flow[e];
    if (net.edges()[e].to == node) total -= flow[e];
  }
  return total;
}

}  // namespace

FlowNetwork::FlowNetwork() {
  add_node();
  add_node();
}

std::size_t FlowNetwork::add_node(std::optional<LevelVertex> vertex) {
  vertex_of_.push_back(vertex);
  out_.emplace_back();
  return vertex_of_.size() - 1;
}

std::size_t FlowNetwork::add_edge(std::size_t from, std::size_t to,
                                  std::int64_t lower, std::int64_t capacity) {
  if (from >= node_count() || to >= node_count()) {
    throw InvalidArgumentError("flow edge endpoint out of range");
  }
  if (lower < 0 || capacity < lower) {
    throw InvalidArgumentError("flow edge needs 0 <= lower <= capacity");
  }
  edges_.push_back({from, to, lower, capacity});
  out_[from].push_back(edges_.size() - 1);
  return edges_.size() - 1;
}

nlohmann::json FlowNetwork::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t v = 0; v < node_count(); ++v) {
    if (v == source()) {
      nodes.push_back({{"id", v}, {"role", "source"}});
    } else if (v == sink()) {
      nodes.push_back({{"id", v}, {"role", "sink"}});
    } else if (auto lv = vertex_of_[v]) {
      nodes.push_back({{"id", v}, {"level", lv->level}, {"slot", lv->slot}});
    } else {
      nodes.push_back({{"id", v}});
    }
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : edges_) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"lower", e.lower},
                     {"capacity", e.capacity}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

FlowNetwork build_network(const TemporalSampling& p,
                          const std::vector<std::vector<PointId>>& centers,
                          double gamma) {
  if (centers.size() != p.length()) {
    throw InvalidCentersError("centers must list one set per level");
  }
  const LevelGraph g(p, gamma);
  const auto inf = static_cast<std::int64_t>(std::max<std::size_t>(p.size(), 1));

  std::vector<char> is_center(g.vertex_count(), 0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (PointId c : centers[i]) {
      auto slot = p.slot_of(i, c);
      if (!slot) {
        throw InvalidCentersError("center " + std::to_string(c.index) +
                                  " is not in level " + std::to_string(i));
      }
      is_center[g.index({i, *slot})] = 1;
    }
  }

  FlowNetwork net;
  std::vector<std::size_t> tail(g.vertex_count());
  std::vector<std::size_t> head(g.vertex_count());
  for (std::size_t i = 0; i < p.length(); ++i) {
    for (std::size_t s = 0; s < g.level_size(i); ++s) {
      const LevelVertex v{i, s};
      const std::size_t idx = g.index(v);
      tail[idx] = net.add_node(v);
      head[idx] = is_center[idx] ? net.add_node(v) : tail[idx];
    }
  }
  for (std::size_t s = 0; s < g.level_size(0); ++s) {
    net.add_edge(net.source(), tail[g.index({0, s})], 0, inf);
  }
  for (std::size_t i = 0; i < p.length(); ++i) {
    for (std::size_t s = 0; s < g.level_size(i); ++s) {
      const std::size_t idx = g.index({i, s});
      if (is_center[idx]) net.add_edge(tail[idx], head[idx], 1, inf);
      if (i + 1 < p.length()) {
        for (std::size_t next : g.successors({i, s})) {
          net.add_edge(head[idx], tail[g.index({i + 1, next})], 0, inf);
        }
      } else {
        net.add_edge(head[idx], net.sink(), 0, inf);
      }
    }
  }
  return net;
}

bool is_feasible_flow(const FlowNetwork& net, const IntegralFlow& f) {
  if (f.edge_flow.size() != net.edges().size()) return false;
  std::vector<std::int64_t> balance(net.node_count(), 0);
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    const auto& edge = net.edges()[e];
    const auto x = f.edge_flow[e];
    if (x < edge.lower || x > edge.capacity) return false;
    balance[edge.from] -= x;
    balance[edge.to] += x;
  }
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (v != net.source() && v != net.sink() && balance[v] != 0) return false;
  }
  return f.value == -balance[net.source()];
}

std::optional<IntegralFlow> min_feasible_flow(const FlowNetwork& net) {
  const std::size_t n = net.node_count();
  const std::size_t super_source = n;
  const std::size_t super_sink = n + 1;
  Residual r(n + 2);

  std::vector<std::int64_t> excess(n, 0);
  std::vector<std::size_t> arc_of(net.edges().size());
  std::int64_t cap_total = 0;
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    const auto& edge = net.edges()[e];
    arc_of[e] = r.add(edge.from, edge.to, edge.capacity - edge.lower);
    excess[edge.to] += edge.lower;
    excess[edge.from] -= edge.lower;
    cap_total += edge.capacity;
  }
  const std::size_t back = r.add(net.sink(), net.source(), cap_total + 1);
  std::int64_t demand = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      r.add(super_source, v, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      r.add(v, super_sink, -excess[v]);
    }
  }
  if (r.max_flow(super_source, super_sink, demand) < demand) return std::nullopt;

  // Drop the return arc, then push flow back from sink to source through the
  // residual network; every unit pushed lowers the value by one.
  const std::int64_t feasible_value = r.cap(back ^ 1);
  r.cap(back) = 0;
  r.cap(back ^ 1) = 0;
  const std::int64_t cancelled =
      r.max_flow(net.sink(), net.source(), std::numeric_limits<std::int64_t>::max());

  IntegralFlow f;
  f.edge_flow.resize(net.edges().size());
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    f.edge_flow[e] = net.edges()[e].lower + r.cap(arc_of[e] ^ 1);
  }
  f.value = net_outflow(net, f.edge_flow, net.source());
  if (f.value != feasible_value - cancelled || !is_feasible_flow(net, f)) {
    throw InvariantError("min feasible flow produced an inconsistent flow");
  }
  return f;
}

std::vector<std::vector<std::size_t>> decompose_unit_paths(
    const FlowNetwork& net, const IntegralFlow& f) {
  if (!is_feasible_flow(net, f)) {
    throw InvariantError("cannot decompose a flow that is not feasible");
  }
  std::vector<std::int64_t> left = f.edge_flow;
  std::vector<std::size_t> cursor(net.node_count(), 0);
  std::vector<std::vector<std::size_t>> paths;
  for (std::int64_t unit = 0; unit < f.value; ++unit) {
    std::vector<std::size_t> path;
    std::size_t at = net.source();
    while (at != net.sink()) {
      const auto& outs = net.out_edges(at);
      while (cursor[at] < outs.size() && left[outs[cursor[at]]] == 0) ++cursor[at];
      if (cursor[at] == outs.size() || path.size() > net.edges().size()) {
        throw InvariantError("flow walk stuck at node " + std::to_string(at));
      }
      const std::size_t e = outs[cursor[at]];
      --left[e];
      path.push_back(e);
      at = net.edges()[e].to;
    }
    paths.push_back(std::move(path));
  }
  for (auto x : left) {
    if (x != 0) throw InvariantError("flow leaves units on cycles");
  }
  return paths;
}

std::vector<Trajectory> decompose_paths(const FlowNetwork& net,
                                        const IntegralFlow& f,
                                        const TemporalSampling& p) {
  std::vector<Trajectory> out;
  for (const auto& path : decompose_unit_paths(net, f)) {
    std::vector<std::size_t> slots;
    for (std::size_t e : path) {
      const auto v = net.vertex_of(net.edges()[e].to);
      if (!v) continue;
      if (v->level == slots.size()) {
        slots.push_back(v->slot);
      } else if (v->level + 1 != slots.size() || slots.back() != v->slot) {
        throw InvariantError("unit path skips or revisits a level");
      }
    }
    if (slots.size() != p.length()) {
      throw InvariantError("unit path does not span every level");
    }
    out.push_back(trajectory_from_slots(p, slots));
  }
  return out;
}

}  // namespace tclust
