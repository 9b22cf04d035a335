#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tclust/metric.hpp"

namespace tclust {

// One point per level. points[i] must belong to level i of its sampling.
struct Trajectory {
  std::vector<PointId> points;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
  friend auto operator<=>(const Trajectory&, const Trajectory&) = default;
};

// A multiset of trajectories; duplicates are allowed.
struct Clustering {
  std::vector<Trajectory> trajectories;

  std::size_t size() const { return trajectories.size(); }
  bool empty() const { return trajectories.empty(); }
  friend bool operator==(const Clustering&, const Clustering&) = default;
};

enum class Objective { center, median, means };

std::string to_string(Objective objective);
// Accepts "center", "median", "means".
Objective objective_from_string(const std::string& name);

// A sequence of t >= 1 non-empty levels, each a set of points of one shared
// metric. The same PointId may appear in several levels.
class TemporalSampling {
 public:
  // Throws InvalidArgumentError on an empty level list, an empty level or a
  // repeated id inside one level, and InvalidPointError on unknown ids.
  TemporalSampling(FiniteMetric metric, std::vector<std::vector<PointId>> levels);

  const FiniteMetric& metric() const { return metric_; }
  std::size_t length() const { return levels_.size(); }
  // Total number of points over all levels.
  std::size_t size() const { return size_; }
  std::span<const PointId> level(std::size_t i) const { return levels_.at(i); }
  const std::vector<std::vector<PointId>>& levels() const { return levels_; }

  // Position of p inside level i, if present.
  std::optional<std::size_t> slot_of(std::size_t level, PointId p) const;
  // Every point id occurring in some level, each listed once.
  std::vector<PointId> support() const;

  friend bool operator==(const TemporalSampling&,
                         const TemporalSampling&) = default;

 private:
  FiniteMetric metric_;
  std::vector<std::vector<PointId>> levels_;
  std::size_t size_ = 0;
};

struct ClusteringStats {
  std::size_t k = 0;
  double rad_inf = 0.0;
  double rad_1 = 0.0;
  double rad_2 = 0.0;
  double delta = 0.0;
};

// Throws StructuralError unless tau has one entry per level and each entry
// belongs to its level.
void validate_trajectory(const TemporalSampling& p, const Trajectory& tau);
void validate_clustering(const TemporalSampling& p, const Clustering& c);

// max_i d(tau(i), tau(i+1)); 0 for a single level.
double displacement(const FiniteMetric& m, const Trajectory& tau);
// Max displacement over the clustering. Throws EmptyClusteringError.
double clustering_displacement(const FiniteMetric& m, const Clustering& c);

// Per-point distance to the nearest center of level i (infinite when c is
// empty), squared for the means objective.
std::vector<double> level_assignment_costs(const TemporalSampling& p,
                                           const Clustering& c,
                                           std::size_t level,
                                           Objective objective);

// Cost of level i alone: max (center) or sum (median, means).
double level_cost(const TemporalSampling& p, const Clustering& c,
                  std::size_t level, Objective objective);

// rad_inf, rad_1 or rad_2: the maximum level cost. Infinite for an empty
// clustering.
double spatial_cost(const TemporalSampling& p, const Clustering& c,
                    Objective objective);

ClusteringStats compute_stats(const TemporalSampling& p, const Clustering& c);

enum class Bound { count, radius, displacement };

struct Violation {
  Bound bound;
  double actual;
  double limit;
};

struct SolutionReport {
  bool pass = true;
  std::vector<Violation> violations;
  ClusteringStats stats;

  std::string describe() const;
};

// Checks |c| <= k, spatial_cost <= r and displacement <= delta, all closed
// comparisons under the metric tolerance. Throws StructuralError when c does
// not fit p.
SolutionReport check_solution(const TemporalSampling& p, const Clustering& c,
                              std::size_t k, double r, double delta,
                              Objective objective);

}  // namespace tclust
