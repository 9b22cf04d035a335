#include "tclust/oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "tclust/error.hpp"
#include "tclust/level_graph.hpp"

namespace tclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double powered(double d, Objective objective) {
  return objective == Objective::means ? d * d : d;
}

void check_params(double r, double delta) {
  if (!(r >= 0.0)) throw InvalidArgumentError("r must be >= 0");
  if (!(delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
}

// Flat (level, slot) numbering shared by the subset searches.
struct Layout {
  std::vector<std::size_t> offsets{0};

  explicit Layout(const TemporalSampling& p) {
    for (const auto& level : p.levels()) offsets.push_back(offsets.back() + level.size());
  }
  std::size_t size() const { return offsets.back(); }
};

// cost[j][v]: powered distance from trajectory j's center to flat point v.
std::vector<std::vector<double>> cost_table(const TemporalSampling& p,
                                            const std::vector<Trajectory>& ts,
                                            Objective objective) {
  const auto& m = p.metric();
  const Layout layout(p);
  std::vector<std::vector<double>> table;
  table.reserve(ts.size());
  for (const auto& tau : ts) {
    std::vector<double> row(layout.size());
    for (std::size_t i = 0; i < p.length(); ++i) {
      const auto pts = p.level(i);
      for (std::size_t s = 0; s < pts.size(); ++s) {
        row[layout.offsets[i] + s] = powered(m.distance(tau.points[i], pts[s]), objective);
      }
    }
    table.push_back(std::move(row));
  }
  return table;
}

double cost_of_assignment(const Layout& layout, const std::vector<double>& best,
                          Objective objective) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < layout.offsets.size(); ++i) {
    double level = 0.0;
    for (std::size_t v = layout.offsets[i]; v < layout.offsets[i + 1]; ++v) {
      level = objective == Objective::center ? std::max(level, best[v]) : level + best[v];
    }
    worst = std::max(worst, level);
  }
  return worst;
}

void charge(std::size_t& used, std::size_t limit) {
  if (++used > limit) {
    std::ostringstream os;
    os << "oracle subset budget of " << limit << " exceeded";
    throw BudgetExceededError(os.str());
  }
}

// Minimum spatial cost over all size-m subsets of ts. Stops at the first
// subset whose cost is within stop_at.
struct BestSubset {
  double cost = kInf;
  std::vector<std::size_t> chosen;
};

BestSubset best_subset(const TemporalSampling& p, const std::vector<Trajectory>& ts,
                       std::size_t m, Objective objective,
                       const OracleBudget& budget,
                       std::optional<double> stop_at) {
  const Layout layout(p);
  const auto table = cost_table(p, ts, objective);
  const auto& metric = p.metric();
  BestSubset best;
  std::vector<std::vector<double>> mins(m + 1, std::vector<double>(layout.size(), kInf));
  std::vector<std::size_t> chosen;
  std::size_t used = 0;
  bool done = false;

  auto recurse = [&](auto&& self, std::size_t from) -> void {
    const std::size_t depth = chosen.size();
    if (depth == m) {
      charge(used, budget.max_subsets);
      const double c = cost_of_assignment(layout, mins[depth], objective);
      if (c < best.cost) {
        best.cost = c;
        best.chosen = chosen;
      }
      if (stop_at && metric.within(c, *stop_at)) done = true;
      return;
    }
    for (std::size_t j = from; j + (m - depth) <= ts.size() && !done; ++j) {
      for (std::size_t v = 0; v < layout.size(); ++v) {
        mins[depth + 1][v] = std::min(mins[depth][v], table[j][v]);
      }
      chosen.push_back(j);
      self(self, j + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

// Tube covers as flat boolean rows.
std::vector<std::vector<char>> tube_rows(const TemporalSampling& p,
                                         const std::vector<Trajectory>& ts,
                                         double r) {
  const auto table = cost_table(p, ts, Objective::center);
  std::vector<std::vector<char>> rows;
  rows.reserve(ts.size());
  for (const auto& costs : table) {
    std::vector<char> row(costs.size());
    for (std::size_t v = 0; v < costs.size(); ++v) row[v] = p.metric().within(costs[v], r);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Set-cover search: branch on the trajectories covering the first uncovered
// pair, never using more than k of them.
std::optional<std::vector<std::size_t>> cover_search(
    const std::vector<std::vector<char>>& rows, std::size_t universe,
    std::size_t k, std::size_t& used, const OracleBudget& budget) {
  std::vector<int> hits(universe, 0);
  std::vector<std::size_t> chosen;
  std::vector<std::vector<std::size_t>> covering(universe);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t v = 0; v < universe; ++v) {
      if (rows[j][v]) covering[v].push_back(j);
    }
  }
  auto recurse = [&](auto&& self) -> bool {
    charge(used, budget.max_subsets);
    const auto first = std::find(hits.begin(), hits.end(), 0);
    if (first == hits.end()) return true;
    if (chosen.size() == k) return false;
    const auto e = static_cast<std::size_t>(first - hits.begin());
    for (std::size_t j : covering[e]) {
      for (std::size_t v = 0; v < universe; ++v) hits[v] += rows[j][v];
      chosen.push_back(j);
      if (self(self)) return true;
      chosen.pop_back();
      for (std::size_t v = 0; v < universe; ++v) hits[v] -= rows[j][v];
    }
    return false;
  };
  if (recurse(recurse)) return chosen;
  return std::nullopt;
}

Clustering pick(const std::vector<Trajectory>& ts,
                const std::vector<std::size_t>& chosen) {
  Clustering c;
  for (std::size_t j : chosen) c.trajectories.push_back(ts[j]);
  return c;
}

// ---- level sweep ---------------------------------------------------------

using Multiset = std::vector<std::size_t>;

// All sorted k-multisets over {0, ..., n-1}.
std::vector<Multiset> multisets(std::size_t n, std::size_t k) {
  std::vector<Multiset> out;
  Multiset cur(k, 0);
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
    if (pos == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t s = from; s < n; ++s) {
      cur[pos] = s;
      self(self, pos + 1, s);
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

std::size_t multiset_count(std::size_t n, std::size_t k) {
  // C(n + k - 1, k), saturating.
  long double c = 1.0L;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c * static_cast<long double>(n + k - j) / static_cast<long double>(j);
  }
  return c > 1e18L ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(c + 0.5L);
}

// A perfect matching a[j] -> b[match[j]] with every pair joined in g, if any.
std::optional<std::vector<std::size_t>> match_levels(const LevelGraph& g,
                                                     std::size_t level,
                                                     const Multiset& a,
                                                     const Multiset& b) {
  const std::size_t k = a.size();
  std::vector<std::size_t> owner(k, k);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t j) -> bool {
    for (std::size_t q = 0; q < k; ++q) {
      if (seen[q] || !g.has_edge({level, a[j]}, b[q])) continue;
      seen[q] = 1;
      if (owner[q] == k || self(self, owner[q])) {
        owner[q] = j;
        return true;
      }
    }
    return false;
  };
  for (std::size_t j = 0; j < k; ++j) {
    seen.assign(k, 0);
    if (!augment(augment, j)) return std::nullopt;
  }
  std::vector<std::size_t> match(k);
  for (std::size_t q = 0; q < k; ++q) match[owner[q]] = q;
  return match;
}

double multiset_cost(const TemporalSampling& p, std::size_t level,
                     const Multiset& centers, Objective objective) {
  const auto& m = p.metric();
  const auto pts = p.level(level);
  double total = 0.0;
  for (const PointId q : pts) {
    double best = kInf;
    for (std::size_t s : centers) best = std::min(best, powered(m.distance(q, pts[s]), objective));
    total = objective == Objective::center ? std::max(total, best) : total + best;
  }
  return total;
}

// Minimax over per-level costs of exactly-k center multisets linked by
// delta-matchings between consecutive levels.
std::optional<OptimalRadius> sweep_opt_r(const TemporalSampling& p, std::size_t k,
                                         double delta, Objective objective,
                                         const OracleBudget& budget) {
  const std::size_t t = p.length();
  std::size_t work = 0;
  for (std::size_t i = 0; i + 1 < t; ++i) {
    const std::size_t a = multiset_count(p.level(i).size(), k);
    const std::size_t b = multiset_count(p.level(i + 1).size(), k);
    work += a > budget.max_sweep_work / std::max<std::size_t>(b, 1) ? budget.max_sweep_work + 1 : a * b;
    if (work > budget.max_sweep_work) {
      std::ostringstream os;
      os << "oracle sweep budget of " << budget.max_sweep_work << " exceeded";
      throw BudgetExceededError(os.str());
    }
  }

  const LevelGraph g(p, delta);
  std::vector<std::vector<Multiset>> states(t);
  std::vector<std::vector<double>> value(t);
  std::vector<std::vector<std::size_t>> pred(t);
  states[0] = multisets(p.level(0).size(), k);
  for (const auto& s : states[0]) value[0].push_back(multiset_cost(p, 0, s, objective));
  for (std::size_t i = 1; i < t; ++i) {
    states[i] = multisets(p.level(i).size(), k);
    value[i].assign(states[i].size(), kInf);
    pred[i].assign(states[i].size(), 0);
    // Visit predecessors by increasing value so the first match is the best.
    std::vector<std::size_t> order(states[i - 1].size());
    for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return value[i - 1][x] < value[i - 1][y];
    });
    for (std::size_t b = 0; b < states[i].size(); ++b) {
      for (std::size_t a : order) {
        if (value[i - 1][a] == kInf) break;
        if (match_levels(g, i - 1, states[i - 1][a], states[i][b])) {
          value[i][b] = std::max(value[i - 1][a],
                                 multiset_cost(p, i, states[i][b], objective));
          pred[i][b] = a;
          break;
        }
      }
    }
  }

  const auto& last = value[t - 1];
  const auto it = std::min_element(last.begin(), last.end());
  if (*it == kInf) return std::nullopt;
  std::vector<std::size_t> path(t);
  path[t - 1] = static_cast<std::size_t>(it - last.begin());
  for (std::size_t i = t - 1; i > 0; --i) path[i - 1] = pred[i][path[i]];

  // Chain the matchings into k trajectories.
  std::vector<std::vector<std::size_t>> slots(k, std::vector<std::size_t>(t));
  std::vector<std::size_t> where(k);
  for (std::size_t j = 0; j < k; ++j) {
    where[j] = j;
    slots[j][0] = states[0][path[0]][j];
  }
  for (std::size_t i = 1; i < t; ++i) {
    const auto match = *match_levels(g, i - 1, states[i - 1][path[i - 1]], states[i][path[i]]);
    for (std::size_t j = 0; j < k; ++j) {
      where[j] = match[where[j]];
      slots[j][i] = states[i][path[i]][where[j]];
    }
  }
  OptimalRadius out{*it, {}};
  for (const auto& s : slots) out.witness.trajectories.push_back(trajectory_from_slots(p, s));
  return out;
}

}  // namespace

void OracleBudget::validate() const {
  if (max_trajectories == 0 || max_subsets == 0 || max_sweep_work == 0) {
    throw InvalidArgumentError("oracle budgets must be positive");
  }
}

std::string to_string(OracleMethod method) {
  return method == OracleMethod::level_sweep ? "sweep" : "subsets";
}

OracleMethod oracle_method_from_string(const std::string& name) {
  if (name == "subsets") return OracleMethod::trajectory_subsets;
  if (name == "sweep") return OracleMethod::level_sweep;
  throw InvalidArgumentError("unknown oracle method '" + name + "'");
}

std::vector<Trajectory> enumerate_trajectories(const TemporalSampling& p,
                                               double delta,
                                               const OracleBudget& budget) {
  if (!(delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
  budget.validate();
  const LevelGraph g(p, delta);
  const auto alive = g.reaches_last_level();
  const std::size_t t = p.length();
  std::vector<Trajectory> out;
  std::vector<std::size_t> slots;
  auto recurse = [&](auto&& self) -> void {
    const std::size_t i = slots.size();
    if (i == t) {
      if (out.size() == budget.max_trajectories) {
        std::ostringstream os;
        os << "more than " << budget.max_trajectories << " trajectories";
        throw BudgetExceededError(os.str());
      }
      out.push_back(trajectory_from_slots(p, slots));
      return;
    }
    auto visit = [&](std::size_t s) {
      if (!alive[g.index({i, s})]) return;
      slots.push_back(s);
      self(self);
      slots.pop_back();
    };
    if (i == 0) {
      for (std::size_t s = 0; s < g.level_size(0); ++s) visit(s);
    } else {
      for (std::size_t s : g.successors({i - 1, slots.back()})) visit(s);
    }
  };
  recurse(recurse);
  return out;
}

OracleVerdict oracle_feasible(const TemporalSampling& p, std::size_t k, double r,
                              double delta, Objective objective,
                              const OracleBudget& budget, OracleMethod method) {
  check_params(r, delta);
  budget.validate();
  if (k == 0) return {};
  if (method == OracleMethod::level_sweep) {
    const auto best = sweep_opt_r(p, k, delta, objective, budget);
    if (!best || !p.metric().within(best->r, r)) return {};
    return {true, best->witness};
  }
  const auto ts = enumerate_trajectories(p, delta, budget);
  if (ts.empty()) return {};
  if (objective == Objective::center) {
    std::size_t used = 0;
    const auto chosen = cover_search(tube_rows(p, ts, r), Layout(p).size(), k, used, budget);
    if (!chosen) return {};
    return {true, pick(ts, *chosen)};
  }
  const auto best = best_subset(p, ts, std::min(k, ts.size()), objective, budget, r);
  if (!p.metric().within(best.cost, r)) return {};
  return {true, pick(ts, best.chosen)};
}

std::optional<std::size_t> oracle_opt_k(const TemporalSampling& p, double r,
                                        double delta, Objective objective,
                                        const OracleBudget& budget,
                                        OracleMethod method) {
  check_params(r, delta);
  budget.validate();
  if (method == OracleMethod::level_sweep) {
    for (std::size_t k = 1; k <= p.size(); ++k) {
      if (oracle_feasible(p, k, r, delta, objective, budget, method).feasible) return k;
    }
    return std::nullopt;
  }
  const auto ts = enumerate_trajectories(p, delta, budget);
  if (ts.empty()) return std::nullopt;
  if (objective == Objective::center) {
    const auto rows = tube_rows(p, ts, r);
    const std::size_t universe = Layout(p).size();
    std::size_t used = 0;
    if (!cover_search(rows, universe, ts.size(), used, budget)) return std::nullopt;
    for (std::size_t k = 1;; ++k) {
      if (cover_search(rows, universe, k, used, budget)) return k;
    }
  }
  // Using every trajectory gives the least cost any clustering can reach.
  if (!p.metric().within(best_subset(p, ts, ts.size(), objective, budget, std::nullopt).cost, r)) {
    return std::nullopt;
  }
  for (std::size_t k = 1;; ++k) {
    if (p.metric().within(best_subset(p, ts, k, objective, budget, r).cost, r)) return k;
  }
}

std::optional<OptimalRadius> oracle_opt_r(const TemporalSampling& p,
                                          std::size_t k, double delta,
                                          Objective objective,
                                          const OracleBudget& budget,
                                          OracleMethod method) {
  if (!(delta >= 0.0)) throw InvalidArgumentError("delta must be >= 0");
  if (k == 0) throw InvalidArgumentError("k must be >= 1");
  budget.validate();
  if (method == OracleMethod::level_sweep) return sweep_opt_r(p, k, delta, objective, budget);
  const auto ts = enumerate_trajectories(p, delta, budget);
  if (ts.empty()) return std::nullopt;
  const auto best = best_subset(p, ts, std::min(k, ts.size()), objective, budget, std::nullopt);
  return OptimalRadius{best.cost, pick(ts, best.chosen)};
}

std::optional<std::size_t> min_tube_cover(const TemporalSampling& p, double r,
                                          double delta,
                                          const OracleBudget& budget) {
  check_params(r, delta);
  budget.validate();
  const auto ts = enumerate_trajectories(p, delta, budget);
  const auto rows = tube_rows(p, ts, r);
  const std::size_t universe = Layout(p).size();
  std::size_t used = 0;
  for (std::size_t size = 1; size <= ts.size(); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t j = 0; j < size; ++j) idx[j] = j;
    while (true) {
      charge(used, budget.max_subsets);
      std::vector<char> hit(universe, 0);
      for (std::size_t j : idx) {
        for (std::size_t v = 0; v < universe; ++v) hit[v] |= rows[j][v];
      }
      if (std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; })) return size;
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == ts.size() - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace tclust
