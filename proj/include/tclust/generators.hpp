#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tclust/sampling.hpp"

namespace tclust {

struct Literal {
  std::size_t var = 0;  // 0-based
  bool negated = false;

  friend bool operator==(Literal, Literal) = default;
};

// Exact-3-SAT formula: every clause has three literals over distinct
// variables.
struct Cnf3 {
  std::size_t variables = 0;
  std::vector<std::array<Literal, 3>> clauses;

  // Throws ValidationError on out-of-range or repeated variables.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

// DIMACS subset: "c" comment lines, one "p cnf <vars> <clauses>" header, then
// clauses of exactly three nonzero literals terminated by 0.
Cnf3 parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf3& cnf);

// The eight clauses over x1, x2, x3 with every sign pattern.
Cnf3 all_sign_patterns_cnf();

struct GadgetParams {
  double r0 = 4.0;
  double delta0 = 1.0;
  double rho = 5.0;

  // Requires r0 > 0, 0 < delta0 < r0 * sqrt(3) / 4 and rho >= 1.
  void validate() const;
};

struct GeneratedInstance {
  TemporalSampling sampling;
  std::size_t k = 0;
  std::optional<Clustering> planted;
  nlohmann::json metadata;

  // Instance document with extra "k", "metadata" and, when present,
  // "planted" members.
  nlohmann::json to_json() const;
};

// Temporal 3-SAT gadget in the plane, with k = number of variables.
//
// Variable i is a pair (x_i, not x_i) at distance r0/2, parked horizontally
// on the x-axis around (i * (rho r0/2 + r0/2), 0) so that parked pairs are at
// least rho r0/2 apart. Each clause runs three phases:
//   assembly:    its gadgets, middle variable first, rotate in place and then
//                move to a staging point below the axis so that the three
//                clause literals coincide there and the other ends sit on the
//                r0/2 circle at 90, 210 and 330 degrees;
//   extra point: a new point appears at the staging point, moves rho r0
//                straight away from the 90 degree end and comes back;
//   disassembly: the assembly frames in reverse.
// Consecutive levels move every point by at most delta0. Every level uses
// fresh point ids; within a level the slots are x_1, not x_1, ..., then the
// extra point when present.
GeneratedInstance gen_sat3(const Cnf3& cnf, const GadgetParams& params);

struct SetCoverInstance {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> sets;

  void validate() const;
};

// {"universe": N, "sets": [[idx, ...], ...]} with 0-based element indices.
SetCoverInstance setcover_from_json(const nlohmann::json& doc);
nlohmann::json setcover_to_json(const SetCoverInstance& sc);

// One-level matrix instance. Ids 0..|S|-1 are the sets, then the elements.
// Sets are pairwise at distance 1, an element is at distance 1 from the sets
// containing it, and every other pair is at distance 2.
GeneratedInstance gen_setcover_metric(const SetCoverInstance& sc);

// Six elements, five sets: {u1,u2}, {u2,u3,u4,u6}, {u2,u3,u5}, {u5}, {u5,u6}.
SetCoverInstance set_cover_example();

// k random walks in [0, extent]^dim with steps of length <= step. Each level
// holds the walkers followed by extras_per_level points within radius of a
// uniformly chosen walker. The walks are returned as the planted clustering.
struct WalkerParams {
  std::uint64_t seed = 1;
  std::size_t k = 2;
  std::size_t t = 3;
  std::size_t extras_per_level = 2;
  double step = 1.0;
  double radius = 1.0;
  std::size_t dim = 2;
};
GeneratedInstance gen_random_walkers(const WalkerParams& params);

// Two copies of five collinear points spaced `spacing` apart (same ids in
// both levels).
TemporalSampling collinear_pair_instance(double spacing);

}  // namespace tclust
