#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "tclust/sampling.hpp"

namespace tclust {

enum class InfeasibleReason {
  net_too_large,       // a level's net has more than k points
  flow_infeasible,     // no flow meets the lower bounds
  flow_value_exceeds,  // the minimum flow needs more than the allowed paths
  uncovered_points,    // greedy cover stalled with points left
  no_path,             // no trajectory within the displacement bound exists
  potential_above_target,
};

std::string to_string(InfeasibleReason reason);

// Why a solver concluded that no clustering with the requested parameters
// exists.
struct Certificate {
  InfeasibleReason reason;
  std::string message;
  std::optional<std::size_t> level;
  double value = 0.0;
  double bound = 0.0;

  nlohmann::json to_json() const;
};

// Either a clustering or an infeasibility certificate.
class SolveOutcome {
 public:
  SolveOutcome(Clustering c) : result_(std::move(c)) {}
  SolveOutcome(Certificate c) : result_(std::move(c)) {}

  bool feasible() const { return std::holds_alternative<Clustering>(result_); }
  const Clustering& clustering() const { return std::get<Clustering>(result_); }
  const Certificate& certificate() const {
    return std::get<Certificate>(result_);
  }

 private:
  std::variant<Clustering, Certificate> result_;
};

}  // namespace tclust
