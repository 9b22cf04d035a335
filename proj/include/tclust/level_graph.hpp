#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "tclust/sampling.hpp"

namespace tclust {

// A vertex (i, x) of the layered graph, addressed by level and by the
// position of x inside that level.
struct LevelVertex {
  std::size_t level = 0;
  std::size_t slot = 0;

  friend bool operator==(LevelVertex, LevelVertex) = default;
};

// The layered digraph linking (i, p) to (i+1, q) whenever d(p, q) <= delta.
// Successor lists hold slots of the next level in increasing order. The
// vertex numbering is (level, slot) row-major.
class LevelGraph {
 public:
  LevelGraph(const TemporalSampling& p, double delta);

  double delta() const { return delta_; }
  std::size_t levels() const { return offsets_.size() - 1; }
  std::size_t level_size(std::size_t level) const {
    return offsets_[level + 1] - offsets_[level];
  }
  std::size_t vertex_count() const { return offsets_.back(); }
  std::size_t index(LevelVertex v) const { return offsets_[v.level] + v.slot; }
  std::size_t edge_count() const;

  std::span<const std::size_t> successors(LevelVertex v) const {
    return successors_[index(v)];
  }
  bool has_edge(LevelVertex from, std::size_t next_slot) const;

  // Vertices from which some path reaches the last level.
  std::vector<bool> reaches_last_level() const;

  nlohmann::json to_json() const;

 private:
  double delta_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::size_t>> successors_;
};

// True iff every consecutive pair of tau is an edge of g.
bool trajectory_is_path(const LevelGraph& g, const TemporalSampling& p,
                        const Trajectory& tau);

// Slots of tau in each level. Throws StructuralError if tau does not fit p.
std::vector<std::size_t> trajectory_slots(const TemporalSampling& p,
                                          const Trajectory& tau);
Trajectory trajectory_from_slots(const TemporalSampling& p,
                                 std::span<const std::size_t> slots);

// Lexicographically smallest (by slot) first-to-last-level path, if any.
std::optional<Trajectory> first_path(const LevelGraph& g,
                                     const TemporalSampling& p);

}  // namespace tclust
