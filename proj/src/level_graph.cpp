#include "tclust/level_graph.hpp"

#include <algorithm>

#include "tclust/error.hpp"

namespace tclust {

LevelGraph::LevelGraph(const TemporalSampling& p, double delta) : delta_(delta) {
  if (!(delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
  const auto& m = p.metric();
  offsets_.push_back(0);
  for (const auto& level : p.levels()) {
    offsets_.push_back(offsets_.back() + level.size());
  }
  successors_.resize(offsets_.back());
  for (std::size_t i = 0; i + 1 < p.length(); ++i) {
    const auto here = p.level(i);
    const auto next = p.level(i + 1);
    for (std::size_t a = 0; a < here.size(); ++a) {
      auto& out = successors_[offsets_[i] + a];
      for (std::size_t b = 0; b < next.size(); ++b) {
        if (m.within(m.distance(here[a], next[b]), delta)) out.push_back(b);
      }
    }
  }
}

std::size_t LevelGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : successors_) total += s.size();
  return total;
}

bool LevelGraph::has_edge(LevelVertex from, std::size_t next_slot) const {
  const auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), next_slot);
}

std::vector<bool> LevelGraph::reaches_last_level() const {
  std::vector<bool> ok(vertex_count(), false);
  const std::size_t t = levels();
  for (std::size_t s = 0; s < level_size(t - 1); ++s) ok[index({t - 1, s})] = true;
  for (std::size_t i = t - 1; i-- > 0;) {
    for (std::size_t s = 0; s < level_size(i); ++s) {
      for (std::size_t next : successors({i, s})) {
        if (ok[index({i + 1, next})]) {
          ok[index({i, s})] = true;
          break;
        }
      }
    }
  }
  return ok;
}

nlohmann::json LevelGraph::to_json() const {
  nlohmann::json levels_doc = nlohmann::json::array();
  for (std::size_t i = 0; i < levels(); ++i) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t s = 0; s < level_size(i); ++s) {
      const auto succ = successors({i, s});
      rows.push_back(std::vector<std::size_t>(succ.begin(), succ.end()));
    }
    levels_doc.push_back(std::move(rows));
  }
  return {{"delta", delta_}, {"successors", std::move(levels_doc)}};
}

std::vector<std::size_t> trajectory_slots(const TemporalSampling& p,
                                          const Trajectory& tau) {
  validate_trajectory(p, tau);
  std::vector<std::size_t> slots(tau.points.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    slots[i] = *p.slot_of(i, tau.points[i]);
  }
  return slots;
}

Trajectory trajectory_from_slots(const TemporalSampling& p,
                                 std::span<const std::size_t> slots) {
  Trajectory tau;
  tau.points.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    tau.points.push_back(p.level(i)[slots[i]]);
  }
  return tau;
}

bool trajectory_is_path(const LevelGraph& g, const TemporalSampling& p,
                        const Trajectory& tau) {
  const auto slots = trajectory_slots(p, tau);
  for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
    if (!g.has_edge({i, slots[i]}, slots[i + 1])) return false;
  }
  return true;
}

std::optional<Trajectory> first_path(const LevelGraph& g,
                                     const TemporalSampling& p) {
  const auto ok = g.reaches_last_level();
  std::vector<std::size_t> slots;
  for (std::size_t s = 0; s < g.level_size(0); ++s) {
    if (ok[g.index({0, s})]) {
      slots.push_back(s);
      break;
    }
  }
  if (slots.empty()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < g.levels(); ++i) {
    for (std::size_t next : g.successors({i, slots.back()})) {
      if (ok[g.index({i + 1, next})]) {
        slots.push_back(next);
        break;
      }
    }
  }
  return trajectory_from_slots(p, slots);
}

}  // namespace tclust
