#include "tclust/outcome.hpp"

namespace tclust {

std::string to_string(InfeasibleReason reason) {
  switch (reason) {
    case InfeasibleReason::net_too_large: return "net-size";
    case InfeasibleReason::flow_infeasible: return "flow-infeasible";
    case InfeasibleReason::flow_value_exceeds: return "flow-value";
    case InfeasibleReason::uncovered_points: return "uncovered";
    case InfeasibleReason::no_path: return "no-path";
    case InfeasibleReason::potential_above_target: return "potential";
  }
  return "unknown";
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json doc{{"reason", to_string(reason)},
                     {"message", message},
                     {"value", value},
                     {"bound", bound}};
  if (level) doc["level"] = *level;
  return doc;
}

}  // namespace tclust
