#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tclust/level_graph.hpp"
#include "tclust/outcome.hpp"
#include "tclust/sampling.hpp"

namespace tclust {

// Covered flags for every (level, point) pair of a sampling.
class CoverageState {
 public:
  explicit CoverageState(const TemporalSampling& p);

  bool covered(LevelVertex v) const { return flags_[offsets_[v.level] + v.slot]; }
  std::size_t uncovered() const { return uncovered_; }
  std::size_t uncovered_in_level(std::size_t level) const;

  void cover(LevelVertex v);
  // Marks tube(tau, r); returns how many pairs were newly covered.
  std::size_t cover_tube(const TemporalSampling& p, const Trajectory& tau,
                         double r);

 private:
  std::vector<std::size_t> offsets_;
  std::vector<char> flags_;
  std::size_t uncovered_ = 0;
};

struct TubeChoice {
  Trajectory trajectory;
  std::size_t newly_covered = 0;
};

// Trajectory of displacement <= delta whose radius-r tube covers the most
// uncovered pairs, found by a backward pass over G_delta(P). Ties go to the
// lexicographically smallest slot sequence. nullopt when G_delta(P) has no
// first-to-last-level path.
std::optional<TubeChoice> best_new_tube(const TemporalSampling& p, double r,
                                        double delta,
                                        const CoverageState& state);
std::optional<TubeChoice> best_new_tube(const TemporalSampling& p,
                                        const LevelGraph& g, double r,
                                        const CoverageState& state);

// Exact cluster count: 2r-nets per level, then a minimum feasible flow on
// N_{2r+delta}(P, C). Returns at most k trajectories with rad_inf <= 2r and
// displacement <= 2r + delta, or a certificate that no (k, r, delta)
// clustering exists.
SolveOutcome solve_exact_k(const TemporalSampling& p, std::size_t k, double r,
                           double delta);

// Called before each greedy step is applied.
using TubeObserver =
    std::function<void(const CoverageState& before, const TubeChoice& choice)>;

// Greedy cover by tubes: rad_inf <= r and displacement <= delta exactly, with
// at most ln(n) times the optimum number of trajectories.
SolveOutcome solve_rds_greedy(const TemporalSampling& p, double r, double delta,
                              const TubeObserver& observer = {});

// Bicriteria: 2r-nets and a minimum flow on N_{r+delta}(P, C). Returns at most
// 2k trajectories with rad_inf <= 2r and displacement <= r + delta.
SolveOutcome solve_bicriteria(const TemporalSampling& p, std::size_t k,
                              double r, double delta);

// Per-level greedy nets of the given radius.
std::vector<std::vector<PointId>> level_nets(const TemporalSampling& p,
                                             double radius);

}  // namespace tclust
