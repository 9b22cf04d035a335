#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tclust/level_graph.hpp"
#include "tclust/outcome.hpp"
#include "tclust/sampling.hpp"

namespace tclust {

// W(C) = sum_i max{0, cost(i; C) - r}, with cost the per-level sum of
// distances (median) or squared distances (means) to the nearest center.
// Infinite for an empty clustering. Throws InvalidArgumentError for the
// center objective.
double potential_w(const TemporalSampling& p, const Clustering& c, double r,
                   Objective objective);

// Incrementally maintained W for a growing clustering: caches each point's
// current assignment cost so adding a trajectory costs O(n).
class PotentialState {
 public:
  PotentialState(const TemporalSampling& p, double r, Objective objective);

  void add(const Trajectory& tau);

  const Clustering& clustering() const { return clustering_; }
  double value() const;
  double level_cost(std::size_t level) const;
  // Clipped level cost if x (slot of level i) joined the level's centers.
  double level_term_with(std::size_t level, std::size_t slot) const;
  // Cached assignment cost of each point of a level.
  const std::vector<double>& assignment(std::size_t level) const {
    return assignment_[level];
  }
  double target() const { return r_; }
  Objective objective() const { return objective_; }

 private:
  const TemporalSampling* p_;
  double r_;
  Objective objective_;
  Clustering clustering_;
  std::vector<std::vector<double>> assignment_;
};

// Trajectory of displacement <= delta minimizing W(C ∪ {tau}). W separates
// over levels and the level-i term only depends on tau(i), so a backward pass
// over G_delta(P) minimizing the sum of per-level terms is exact. Ties go to
// the lexicographically smallest slot sequence. nullopt when no path exists.
std::optional<Trajectory> best_w_trajectory(const TemporalSampling& p,
                                            double delta, const Clustering& c,
                                            double r, Objective objective);
std::optional<Trajectory> best_w_trajectory(const TemporalSampling& p,
                                            const LevelGraph& g,
                                            const PotentialState& state);

struct MedianParams {
  std::size_t k = 1;
  double r = 0.0;
  double delta = 0.0;
  double epsilon = 0.1;
  Objective objective = Objective::median;
};

struct MedianRun {
  SolveOutcome outcome;
  // W(C_0), W(C_1), ... for each greedy iteration actually run.
  std::vector<double> potentials;
  // ceil(k ln(n * spread^e / epsilon)), at least 1; 0 when the flow case ran.
  std::size_t iteration_limit = 0;
  bool used_flow = false;
};

// Greedy potential descent. Starting from the lexicographically smallest
// feasible trajectory it adds best_w_trajectory for up to iteration_limit
// rounds (stopping early once W reaches 0) and accepts when W <= epsilon * r,
// giving rad <= (1 + epsilon) r with at most 1 + iteration_limit trajectories.
// Targets below the smallest achievable positive cost are handled exactly by
// the flow case.
MedianRun median_greedy(const TemporalSampling& p, const MedianParams& params);
SolveOutcome solve_median_greedy(const TemporalSampling& p,
                                 const MedianParams& params);

// Exact zero-cost case: every point of a level must be a center. Uses the
// 0-nets of the levels (coincident points collapse) as lower-bound-1 edges of
// N_delta(P, C).
SolveOutcome solve_median_r0(const TemporalSampling& p, std::size_t k,
                             double delta);

}  // namespace tclust
