#include "tclust/sampling.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "tclust/error.hpp"

namespace tclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::center: return "center";
    case Objective::median: return "median";
    case Objective::means: return "means";
  }
  return "unknown";
}

Objective objective_from_string(const std::string& name) {
  if (name == "center") return Objective::center;
  if (name == "median") return Objective::median;
  if (name == "means") return Objective::means;
  throw InvalidArgumentError("unknown objective '" + name + "'");
}

TemporalSampling::TemporalSampling(FiniteMetric metric,
                                   std::vector<std::vector<PointId>> levels)
    : metric_(std::move(metric)), levels_(std::move(levels)) {
  if (levels_.empty()) throw InvalidArgumentError("no levels");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].empty()) {
      throw InvalidArgumentError("level " + std::to_string(i) + " is empty");
    }
    std::unordered_set<PointId> seen;
    for (PointId p : levels_[i]) {
      metric_.check(p);
      if (!seen.insert(p).second) {
        throw InvalidArgumentError("point " + std::to_string(p.index) +
                                   " repeated in level " + std::to_string(i));
      }
    }
    size_ += levels_[i].size();
  }
}

std::optional<std::size_t> TemporalSampling::slot_of(std::size_t level,
                                                     PointId p) const {
  const auto& pts = levels_.at(level);
  auto it = std::find(pts.begin(), pts.end(), p);
  if (it == pts.end()) return std::nullopt;
  return static_cast<std::size_t>(it - pts.begin());
}

std::vector<PointId> TemporalSampling::support() const {
  std::vector<PointId> out;
  std::unordered_set<PointId> seen;
  for (const auto& level : levels_) {
    for (PointId p : level) {
      if (seen.insert(p).second) out.push_back(p);
    }
  }
  return out;
}

void validate_trajectory(const TemporalSampling& p, const Trajectory& tau) {
  if (tau.points.size() != p.length()) {
    std::ostringstream os;
    os << "trajectory has " << tau.points.size() << " entries but sampling has "
       << p.length() << " levels";
    throw StructuralError(os.str());
  }
  for (std::size_t i = 0; i < tau.points.size(); ++i) {
    if (!p.slot_of(i, tau.points[i])) {
      std::ostringstream os;
      os << "trajectory point " << tau.points[i].index
         << " is not in level " << i;
      throw StructuralError(os.str());
    }
  }
}

void validate_clustering(const TemporalSampling& p, const Clustering& c) {
  for (const auto& tau : c.trajectories) validate_trajectory(p, tau);
}

double displacement(const FiniteMetric& m, const Trajectory& tau) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < tau.points.size(); ++i) {
    best = std::max(best, m.distance(tau.points[i], tau.points[i + 1]));
  }
  return best;
}

double clustering_displacement(const FiniteMetric& m, const Clustering& c) {
  if (c.empty()) throw EmptyClusteringError("clustering has no trajectories");
  double best = 0.0;
  for (const auto& tau : c.trajectories) best = std::max(best, displacement(m, tau));
  return best;
}

std::vector<double> level_assignment_costs(const TemporalSampling& p,
                                           const Clustering& c,
                                           std::size_t level,
                                           Objective objective) {
  const auto& m = p.metric();
  const auto pts = p.level(level);
  std::vector<double> out(pts.size(), kInf);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (const auto& tau : c.trajectories) {
      out[j] = std::min(out[j], m.distance(pts[j], tau.points.at(level)));
    }
    if (objective == Objective::means) out[j] *= out[j];
  }
  return out;
}

double level_cost(const TemporalSampling& p, const Clustering& c,
                  std::size_t level, Objective objective) {
  const auto costs = level_assignment_costs(p, c, level, objective);
  if (objective == Objective::center) {
    return *std::max_element(costs.begin(), costs.end());
  }
  double sum = 0.0;
  for (double v : costs) sum += v;
  return sum;
}

double spatial_cost(const TemporalSampling& p, const Clustering& c,
                    Objective objective) {
  if (c.empty()) return kInf;
  double best = 0.0;
  for (std::size_t i = 0; i < p.length(); ++i) {
    best = std::max(best, level_cost(p, c, i, objective));
  }
  return best;
}

ClusteringStats compute_stats(const TemporalSampling& p, const Clustering& c) {
  ClusteringStats s;
  s.k = c.size();
  s.rad_inf = spatial_cost(p, c, Objective::center);
  s.rad_1 = spatial_cost(p, c, Objective::median);
  s.rad_2 = spatial_cost(p, c, Objective::means);
  s.delta = c.empty() ? 0.0 : clustering_displacement(p.metric(), c);
  return s;
}

std::string SolutionReport::describe() const {
  if (pass) return "pass";
  std::ostringstream os;
  os << "fail:";
  for (const auto& v : violations) {
    switch (v.bound) {
      case Bound::count: os << " count"; break;
      case Bound::radius: os << " radius"; break;
      case Bound::displacement: os << " displacement"; break;
    }
    os << " " << v.actual << " > " << v.limit << ";";
  }
  return os.str();
}

SolutionReport check_solution(const TemporalSampling& p, const Clustering& c,
                              std::size_t k, double r, double delta,
                              Objective objective) {
  validate_clustering(p, c);
  const auto& m = p.metric();
  SolutionReport report;
  report.stats = compute_stats(p, c);
  const double cost = objective == Objective::center ? report.stats.rad_inf
                      : objective == Objective::median ? report.stats.rad_1
                                                       : report.stats.rad_2;
  if (c.size() > k) {
    report.violations.push_back(
        {Bound::count, static_cast<double>(c.size()), static_cast<double>(k)});
  }
  if (!m.within(cost, r)) report.violations.push_back({Bound::radius, cost, r});
  if (!m.within(report.stats.delta, delta)) {
    report.violations.push_back(
        {Bound::displacement, report.stats.delta, delta});
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace tclust
