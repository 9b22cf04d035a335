#pragma once

#include <span>
#include <vector>

#include "tclust/metric.hpp"

namespace tclust {

struct NetResult {
  std::vector<PointId> chosen;
  double radius = 0.0;
};

// Greedy r-net: scans points in order and keeps a point iff it is farther
// than r from every point kept so far. The result is pairwise > r apart and
// every input point lies within r of some chosen point.
NetResult greedy_net(const FiniteMetric& m, std::span<const PointId> points,
                     double r);

}  // namespace tclust
