#include "tclust/kcenter.hpp"

#include <sstream>

#include "tclust/error.hpp"
#include "tclust/flow.hpp"
#include "tclust/nets.hpp"

namespace tclust {

namespace {

void check_params(double r, double delta) {
  if (!(r >= 0.0)) throw InvalidArgumentError("r must be >= 0");
  if (!(delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
}

// Minimum flow on N_gamma(P, nets), accepted when its value is <= max_paths.
SolveOutcome route_through_nets(const TemporalSampling& p,
                                const std::vector<std::vector<PointId>>& nets,
                                double gamma, std::size_t max_paths) {
  const FlowNetwork net = build_network(p, nets, gamma);
  const auto flow = min_feasible_flow(net);
  if (!flow) {
    std::ostringstream os;
    os << "no feasible flow in N_" << gamma << "(P,C)";
    return Certificate{InfeasibleReason::flow_infeasible, os.str(), std::nullopt,
                       0.0, static_cast<double>(max_paths)};
  }
  if (flow->value > static_cast<std::int64_t>(max_paths)) {
    std::ostringstream os;
    os << "minimum flow value " << flow->value << " > " << max_paths;
    return Certificate{InfeasibleReason::flow_value_exceeds, os.str(),
                       std::nullopt, static_cast<double>(flow->value),
                       static_cast<double>(max_paths)};
  }
  return Clustering{decompose_paths(net, *flow, p)};
}

}  // namespace

CoverageState::CoverageState(const TemporalSampling& p) {
  offsets_.push_back(0);
  for (const auto& level : p.levels()) offsets_.push_back(offsets_.back() + level.size());
  flags_.assign(offsets_.back(), 0);
  uncovered_ = offsets_.back();
}

std::size_t CoverageState::uncovered_in_level(std::size_t level) const {
  std::size_t count = 0;
  for (std::size_t i = offsets_[level]; i < offsets_[level + 1]; ++i) {
    count += flags_[i] ? 0 : 1;
  }
  return count;
}

void CoverageState::cover(LevelVertex v) {
  char& flag = flags_[offsets_[v.level] + v.slot];
  if (!flag) {
    flag = 1;
    --uncovered_;
  }
}

std::size_t CoverageState::cover_tube(const TemporalSampling& p,
                                      const Trajectory& tau, double r) {
  validate_trajectory(p, tau);
  const auto& m = p.metric();
  const std::size_t before = uncovered_;
  for (std::size_t i = 0; i < p.length(); ++i) {
    const auto pts = p.level(i);
    for (std::size_t s = 0; s < pts.size(); ++s) {
      if (m.within(m.distance(tau.points[i], pts[s]), r)) cover({i, s});
    }
  }
  return before - uncovered_;
}

std::optional<TubeChoice> best_new_tube(const TemporalSampling& p, double r,
                                        double delta,
                                        const CoverageState& state) {
  check_params(r, delta);
  return best_new_tube(p, LevelGraph(p, delta), r, state);
}

std::optional<TubeChoice> best_new_tube(const TemporalSampling& p,
                                        const LevelGraph& g, double r,
                                        const CoverageState& state) {
  const auto& m = p.metric();
  const std::size_t t = p.length();
  // gain[v] = |ball(x, r) ∩ uncovered pairs of level i| for v = (i, x).
  std::vector<long> gain(g.vertex_count(), 0);
  for (std::size_t i = 0; i < t; ++i) {
    const auto pts = p.level(i);
    for (std::size_t a = 0; a < pts.size(); ++a) {
      long count = 0;
      for (std::size_t b = 0; b < pts.size(); ++b) {
        if (!state.covered({i, b}) && m.within(m.distance(pts[a], pts[b]), r)) {
          ++count;
        }
      }
      gain[g.index({i, a})] = count;
    }
  }

  constexpr long kNoPath = -1;
  std::vector<long> val(g.vertex_count(), kNoPath);
  std::vector<std::size_t> next(g.vertex_count(), 0);
  for (std::size_t s = 0; s < g.level_size(t - 1); ++s) {
    val[g.index({t - 1, s})] = gain[g.index({t - 1, s})];
  }
  for (std::size_t i = t - 1; i-- > 0;) {
    for (std::size_t s = 0; s < g.level_size(i); ++s) {
      long best = kNoPath;
      for (std::size_t q : g.successors({i, s})) {
        const long v = val[g.index({i + 1, q})];
        if (v > best) {
          best = v;
          next[g.index({i, s})] = q;
        }
      }
      if (best != kNoPath) val[g.index({i, s})] = gain[g.index({i, s})] + best;
    }
  }

  long best = kNoPath;
  std::size_t start = 0;
  for (std::size_t s = 0; s < g.level_size(0); ++s) {
    if (val[g.index({0, s})] > best) {
      best = val[g.index({0, s})];
      start = s;
    }
  }
  if (best == kNoPath) return std::nullopt;
  std::vector<std::size_t> slots{start};
  for (std::size_t i = 0; i + 1 < t; ++i) slots.push_back(next[g.index({i, slots.back()})]);
  return TubeChoice{trajectory_from_slots(p, slots), static_cast<std::size_t>(best)};
}

std::vector<std::vector<PointId>> level_nets(const TemporalSampling& p,
                                             double radius) {
  std::vector<std::vector<PointId>> nets;
  nets.reserve(p.length());
  for (const auto& level : p.levels()) {
    nets.push_back(greedy_net(p.metric(), level, radius).chosen);
  }
  return nets;
}

SolveOutcome solve_exact_k(const TemporalSampling& p, std::size_t k, double r,
                           double delta) {
  check_params(r, delta);
  if (k == 0) throw InvalidArgumentError("k must be >= 1");
  const auto nets = level_nets(p, 2.0 * r);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    if (nets[i].size() > k) {
      std::ostringstream os;
      os << "net-size " << nets[i].size() << " > k at level " << i;
      return Certificate{InfeasibleReason::net_too_large, os.str(), i,
                         static_cast<double>(nets[i].size()),
                         static_cast<double>(k)};
    }
  }
  return route_through_nets(p, nets, 2.0 * r + delta, k);
}

SolveOutcome solve_rds_greedy(const TemporalSampling& p, double r, double delta,
                              const TubeObserver& observer) {
  check_params(r, delta);
  const LevelGraph g(p, delta);
  CoverageState state(p);
  Clustering c;
  while (state.uncovered() > 0) {
    const auto choice = best_new_tube(p, g, r, state);
    if (!choice || choice->newly_covered == 0) {
      std::ostringstream os;
      if (!choice) {
        os << "no trajectory with displacement <= " << delta;
      } else {
        os << state.uncovered() << " points cannot be covered by any tube";
      }
      return Certificate{InfeasibleReason::uncovered_points, os.str(), std::nullopt,
                         static_cast<double>(state.uncovered()), 0.0};
    }
    if (observer) observer(state, *choice);
    state.cover_tube(p, choice->trajectory, r);
    c.trajectories.push_back(choice->trajectory);
  }
  return c;
}

SolveOutcome solve_bicriteria(const TemporalSampling& p, std::size_t k,
                              double r, double delta) {
  check_params(r, delta);
  if (k == 0) throw InvalidArgumentError("k must be >= 1");
  return route_through_nets(p, level_nets(p, 2.0 * r), r + delta, 2 * k);
}

}  // namespace tclust
