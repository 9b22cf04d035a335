#pragma once

// Shared fixtures and independent reference computations for the tests.
// Nothing here calls into the solvers; helpers only use the data model.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "tclust/metric.hpp"
#include "tclust/sampling.hpp"

namespace tclust::testing {

inline FiniteMetric line_metric(const std::vector<double>& xs) {
  std::vector<std::vector<double>> coords;
  for (double x : xs) coords.push_back({x});
  return FiniteMetric::euclidean(1, std::move(coords));
}

inline std::vector<PointId> ids(std::initializer_list<std::size_t> list) {
  std::vector<PointId> out;
  for (std::size_t i : list) out.push_back({i});
  return out;
}

inline Trajectory traj(std::initializer_list<std::size_t> list) { return {ids(list)}; }

// Shortest-path closure of random positive weights: always a valid metric
// with positive off-diagonal entries. Integer weights keep sums exact.
inline FiniteMetric random_matrix_metric(std::mt19937_64& rng, std::size_t n,
                                         int max_weight = 9) {
  std::uniform_int_distribution<int> w(1, max_weight);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) d[a][b] = d[b][a] = w(rng);
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
    }
  }
  return FiniteMetric::from_matrix(d);
}

// t levels of 1..max_per_level distinct ids drawn from a metric of size n.
inline TemporalSampling random_sampling(std::mt19937_64& rng, std::size_t t,
                                        std::size_t max_per_level,
                                        std::size_t n) {
  FiniteMetric m = random_matrix_metric(rng, n);
  std::vector<std::vector<PointId>> levels;
  std::uniform_int_distribution<std::size_t> size(1, std::min(max_per_level, n));
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<PointId> level;
    const std::size_t s = size(rng);
    for (std::size_t j = 0; j < s; ++j) level.push_back({all[j]});
    levels.push_back(std::move(level));
  }
  return TemporalSampling(std::move(m), std::move(levels));
}

// Sorted distinct pairwise distances of the support, including 0.
inline std::vector<double> distance_values(const TemporalSampling& p) {
  const auto support = p.support();
  std::vector<double> out{0.0};
  for (PointId a : support) {
    for (PointId b : support) out.push_back(p.metric().distance(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& values) {
  return values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)];
}

// Every trajectory of the Cartesian product of the levels whose displacement
// is at most delta, by plain odometer enumeration.
inline std::vector<Trajectory> product_trajectories(const TemporalSampling& p,
                                                    double delta) {
  std::vector<Trajectory> out;
  std::vector<std::size_t> idx(p.length(), 0);
  while (true) {
    Trajectory tau;
    for (std::size_t i = 0; i < p.length(); ++i) tau.points.push_back(p.level(i)[idx[i]]);
    if (displacement(p.metric(), tau) <= delta) out.push_back(std::move(tau));
    std::size_t i = p.length();
    while (i > 0) {
      --i;
      if (++idx[i] < p.level(i).size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (p.length() == 0) return out;
  }
}

inline std::size_t ceil_ln(std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)))));
}

}  // namespace tclust::testing
