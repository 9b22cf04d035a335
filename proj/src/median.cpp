#include "tclust/median.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tclust/error.hpp"
#include "tclust/flow.hpp"
#include "tclust/kcenter.hpp"

namespace tclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double exponent_of(Objective objective) {
  switch (objective) {
    case Objective::median: return 1.0;
    case Objective::means: return 2.0;
    case Objective::center: break;
  }
  throw InvalidArgumentError("potential needs the median or means objective");
}

double powered(double d, Objective objective) {
  return objective == Objective::means ? d * d : d;
}

}  // namespace

double potential_w(const TemporalSampling& p, const Clustering& c, double r,
                   Objective objective) {
  exponent_of(objective);
  if (c.empty()) return kInf;
  double w = 0.0;
  for (std::size_t i = 0; i < p.length(); ++i) {
    w += std::max(0.0, level_cost(p, c, i, objective) - r);
  }
  return w;
}

PotentialState::PotentialState(const TemporalSampling& p, double r,
                               Objective objective)
    : p_(&p), r_(r), objective_(objective) {
  exponent_of(objective);
  assignment_.reserve(p.length());
  for (const auto& level : p.levels()) assignment_.emplace_back(level.size(), kInf);
}

void PotentialState::add(const Trajectory& tau) {
  validate_trajectory(*p_, tau);
  const auto& m = p_->metric();
  for (std::size_t i = 0; i < p_->length(); ++i) {
    const auto pts = p_->level(i);
    for (std::size_t s = 0; s < pts.size(); ++s) {
      assignment_[i][s] = std::min(
          assignment_[i][s], powered(m.distance(pts[s], tau.points[i]), objective_));
    }
  }
  clustering_.trajectories.push_back(tau);
}

double PotentialState::level_cost(std::size_t level) const {
  double sum = 0.0;
  for (double v : assignment_[level]) sum += v;
  return sum;
}

double PotentialState::value() const {
  double w = 0.0;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    w += std::max(0.0, level_cost(i) - r_);
  }
  return w;
}

double PotentialState::level_term_with(std::size_t level, std::size_t slot) const {
  const auto& m = p_->metric();
  const auto pts = p_->level(level);
  const PointId x = pts[slot];
  double sum = 0.0;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    sum += std::min(assignment_[level][s], powered(m.distance(pts[s], x), objective_));
  }
  return std::max(0.0, sum - r_);
}

std::optional<Trajectory> best_w_trajectory(const TemporalSampling& p,
                                            double delta, const Clustering& c,
                                            double r, Objective objective) {
  PotentialState state(p, r, objective);
  for (const auto& tau : c.trajectories) state.add(tau);
  return best_w_trajectory(p, LevelGraph(p, delta), state);
}

std::optional<Trajectory> best_w_trajectory(const TemporalSampling& p,
                                            const LevelGraph& g,
                                            const PotentialState& state) {
  const std::size_t t = p.length();
  std::vector<double> val(g.vertex_count(), kInf);
  std::vector<std::size_t> next(g.vertex_count(), 0);
  for (std::size_t s = 0; s < g.level_size(t - 1); ++s) {
    val[g.index({t - 1, s})] = state.level_term_with(t - 1, s);
  }
  for (std::size_t i = t - 1; i-- > 0;) {
    for (std::size_t s = 0; s < g.level_size(i); ++s) {
      double best = kInf;
      for (std::size_t q : g.successors({i, s})) {
        const double v = val[g.index({i + 1, q})];
        if (v < best) {
          best = v;
          next[g.index({i, s})] = q;
        }
      }
      if (best < kInf) val[g.index({i, s})] = state.level_term_with(i, s) + best;
    }
  }
  double best = kInf;
  std::size_t start = 0;
  for (std::size_t s = 0; s < g.level_size(0); ++s) {
    if (val[g.index({0, s})] < best) {
      best = val[g.index({0, s})];
      start = s;
    }
  }
  if (best == kInf) return std::nullopt;
  std::vector<std::size_t> slots{start};
  for (std::size_t i = 0; i + 1 < t; ++i) slots.push_back(next[g.index({i, slots.back()})]);
  return trajectory_from_slots(p, slots);
}

SolveOutcome solve_median_r0(const TemporalSampling& p, std::size_t k,
                             double delta) {
  if (k == 0) throw InvalidArgumentError("k must be >= 1");
  if (!(delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
  const auto nets = level_nets(p, 0.0);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    if (nets[i].size() > k) {
      std::ostringstream os;
      os << "level " << i << " has " << nets[i].size()
         << " distinct points > k";
      return Certificate{InfeasibleReason::net_too_large, os.str(), i,
                         static_cast<double>(nets[i].size()),
                         static_cast<double>(k)};
    }
  }
  const FlowNetwork net = build_network(p, nets, delta);
  const auto flow = min_feasible_flow(net);
  if (!flow) {
    return Certificate{InfeasibleReason::flow_infeasible,
                       "no feasible flow in N_delta(P,P)", std::nullopt, 0.0,
                       static_cast<double>(k)};
  }
  if (flow->value > static_cast<std::int64_t>(k)) {
    std::ostringstream os;
    os << "minimum flow value " << flow->value << " > " << k;
    return Certificate{InfeasibleReason::flow_value_exceeds, os.str(),
                       std::nullopt, static_cast<double>(flow->value),
                       static_cast<double>(k)};
  }
  return Clustering{decompose_paths(net, *flow, p)};
}

MedianRun median_greedy(const TemporalSampling& p, const MedianParams& params) {
  const double e = exponent_of(params.objective);
  if (params.k == 0) throw InvalidArgumentError("k must be >= 1");
  if (!(params.r >= 0.0)) throw InvalidArgumentError("r must be >= 0");
  if (!(params.delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
  if (!(params.epsilon > 0.0)) throw InvalidArgumentError("epsilon must be > 0");

  const LevelGraph g(p, params.delta);
  const auto first = first_path(g, p);
  if (!first) {
    std::ostringstream os;
    os << "no trajectory with displacement <= " << params.delta;
    return {Certificate{InfeasibleReason::no_path, os.str(), std::nullopt, 0.0, 0.0},
            {}, 0, false};
  }

  const auto support = p.support();
  const double min_dist = min_positive_distance(p.metric(), support);
  if (min_dist == 0.0) {
    // All points coincide: any trajectory has cost 0.
    return {Clustering{{*first}}, {0.0}, 0, false};
  }
  // Nonzero costs are at least min_dist^e, so a smaller target forces cost 0.
  if (params.r == 0.0 || params.r < std::pow(min_dist, e)) {
    return {solve_median_r0(p, params.k, params.delta), {}, 0, true};
  }

  const double spread_e = std::pow(diameter(p.metric(), support) / min_dist, e);
  const double log_arg =
      static_cast<double>(p.size()) * spread_e / params.epsilon;
  const double raw = static_cast<double>(params.k) * std::log(log_arg);
  const std::size_t limit =
      raw <= 1.0 ? 1 : static_cast<std::size_t>(std::ceil(raw));

  PotentialState state(p, params.r, params.objective);
  state.add(*first);
  MedianRun run{Clustering{}, {state.value()}, limit, false};
  for (std::size_t it = 0; it < limit && state.value() > 0.0; ++it) {
    const auto tau = best_w_trajectory(p, g, state);
    state.add(*tau);
    run.potentials.push_back(state.value());
  }
  const double w = state.value();
  const double target = params.epsilon * params.r;
  if (p.metric().within(w, target)) {
    run.outcome = state.clustering();
  } else {
    std::ostringstream os;
    os << "potential " << w << " > epsilon * r = " << target << " after "
       << state.clustering().size() << " trajectories";
    run.outcome = Certificate{InfeasibleReason::potential_above_target, os.str(),
                              std::nullopt, w, target};
  }
  return run;
}

SolveOutcome solve_median_greedy(const TemporalSampling& p,
                                 const MedianParams& params) {
  return median_greedy(p, params).outcome;
}

}  // namespace tclust
