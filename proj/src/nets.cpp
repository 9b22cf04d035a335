#include "tclust/nets.hpp"

#include "tclust/error.hpp"

namespace tclust {

NetResult greedy_net(const FiniteMetric& m, std::span<const PointId> points,
                     double r) {
  if (points.empty()) throw InvalidArgumentError("net of an empty point set");
  if (!(r >= 0.0)) throw InvalidArgumentError("net radius must be >= 0");
  NetResult net{{}, r};
  for (PointId p : points) {
    bool separated = true;
    for (PointId q : net.chosen) {
      if (m.within(m.distance(p, q), r)) {
        separated = false;
        break;
      }
    }
    if (separated) net.chosen.push_back(p);
  }
  return net;
}

}  // namespace tclust
