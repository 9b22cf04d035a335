#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tclust/sampling.hpp"

namespace tclust {

struct OracleBudget {
  std::size_t max_trajectories = 5000;
  std::size_t max_subsets = 200000;
  // Level sweep: bound on the summed state-pair checks over all level pairs.
  std::size_t max_sweep_work = 50'000'000;

  void validate() const;
};

// trajectory_subsets enumerates T_delta(P) and searches subsets of it.
// level_sweep walks the levels keeping every reachable k-multiset of center
// slots, which stays tractable on long instances with few points per level.
enum class OracleMethod { trajectory_subsets, level_sweep };

std::string to_string(OracleMethod method);
OracleMethod oracle_method_from_string(const std::string& name);

// All first-to-last-level paths of G_delta(P) in lexicographic slot order.
// Throws BudgetExceededError once more than budget.max_trajectories exist.
std::vector<Trajectory> enumerate_trajectories(const TemporalSampling& p,
                                               double delta,
                                               const OracleBudget& budget = {});

struct OracleVerdict {
  bool feasible = false;
  std::optional<Clustering> witness;
};

// Decides whether a (k, r, delta)-clustering exists under the objective. The
// witness, when present, passes check_solution(p, w, k, r, delta, objective).
OracleVerdict oracle_feasible(
    const TemporalSampling& p, std::size_t k, double r, double delta,
    Objective objective, const OracleBudget& budget = {},
    OracleMethod method = OracleMethod::trajectory_subsets);

// Smallest k admitting a (k, r, delta)-clustering; nullopt when none does.
std::optional<std::size_t> oracle_opt_k(
    const TemporalSampling& p, double r, double delta, Objective objective,
    const OracleBudget& budget = {},
    OracleMethod method = OracleMethod::trajectory_subsets);

struct OptimalRadius {
  double r = 0.0;
  Clustering witness;
};

// Smallest r admitting a (k, r, delta)-clustering; nullopt when no trajectory
// of displacement <= delta exists. Extra trajectories never raise a cost, so
// the optimum is the minimum cost over clusterings of size min(k, |T_delta|)
// (subset method) or of exactly k possibly repeated trajectories (sweep).
std::optional<OptimalRadius> oracle_opt_r(
    const TemporalSampling& p, std::size_t k, double delta, Objective objective,
    const OracleBudget& budget = {},
    OracleMethod method = OracleMethod::trajectory_subsets);

// Minimum number of tubes tube(tau, r), tau in T_delta(P), covering every
// (level, point) pair, by plain search over subsets of increasing size.
// Independent of oracle_feasible; nullopt when the tubes cannot cover.
std::optional<std::size_t> min_tube_cover(const TemporalSampling& p, double r,
                                          double delta,
                                          const OracleBudget& budget = {});

}  // namespace tclust
