#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tclust/error.hpp"
#include "tclust/generators.hpp"
#include "tclust/kcenter.hpp"
#include "tclust/oracle.hpp"

using namespace tclust;
using tclust::testing::ids;
using tclust::testing::line_metric;
using tclust::testing::traj;

namespace {

std::size_t tube_gain(const TemporalSampling& p, const Trajectory& tau, double r,
                      const CoverageState& state) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.length(); ++i) {
    for (std::size_t s = 0; s < p.level(i).size(); ++s) {
      if (!state.covered({i, s}) && p.metric().distance(tau.points[i], p.level(i)[s]) <= r) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("exact-k on a chain") {
  const TemporalSampling p(line_metric({0, 1, 2}), {ids({0}), ids({1}), ids({2})});
  const auto out = solve_exact_k(p, 1, 0.0, 1.0);
  REQUIRE(out.feasible());
  CHECK(out.clustering().size() == 1);
  CHECK(spatial_cost(p, out.clustering(), Objective::center) == 0.0);
}

TEST_CASE("exact-k net-size certificate") {
  const TemporalSampling p(line_metric({0, 10, 20}), {ids({0, 1, 2})});
  const auto out = solve_exact_k(p, 2, 1.0, 0.0);
  REQUIRE_FALSE(out.feasible());
  CHECK(out.certificate().reason == InfeasibleReason::net_too_large);
  CHECK(out.certificate().message == "net-size 3 > k at level 0");
  CHECK(out.certificate().level == 0);
  CHECK_THROWS_AS(solve_exact_k(p, 0, 1.0, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(solve_exact_k(p, 1, -1.0, 0.0), InvalidArgumentError);
}

TEST_CASE("tube DP examples") {
  SUBCASE("everything covered") {
    const TemporalSampling p(line_metric({0, 1}), {ids({0, 1}), ids({0, 1})});
    CoverageState state(p);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t s = 0; s < 2; ++s) state.cover({i, s});
    }
    CHECK(state.uncovered() == 0);
    const auto choice = best_new_tube(p, 0.5, 1.0, state);
    REQUIRE(choice);
    CHECK(choice->newly_covered == 0);
  }
  SUBCASE("single level picks the densest ball") {
    const TemporalSampling p(line_metric({0, 5, 6, 7}), {ids({0, 1, 2, 3})});
    const auto choice = best_new_tube(p, 1.0, 0.0, CoverageState(p));
    REQUIRE(choice);
    CHECK(choice->trajectory == traj({2}));
    CHECK(choice->newly_covered == 3);
  }
  SUBCASE("set-cover metric, nothing covered") {
    const auto p = gen_setcover_metric(set_cover_example()).sampling;
    const auto choice = best_new_tube(p, 1.0, 0.0, CoverageState(p));
    REQUIRE(choice);
    CHECK(choice->trajectory == traj({1}));  // S2
    CHECK(choice->newly_covered == 9);
  }
  SUBCASE("no path") {
    const TemporalSampling p(line_metric({0, 5}), {ids({0}), ids({1})});
    CHECK_FALSE(best_new_tube(p, 1.0, 1.0, CoverageState(p)).has_value());
  }
}

TEST_CASE("greedy set cover examples") {
  SUBCASE("one tube covers all") {
    const TemporalSampling p(line_metric({0, 1, 2}), {ids({0, 1}), ids({1, 2})});
    const auto out = solve_rds_greedy(p, 1.0, 1.0);
    REQUIRE(out.feasible());
    CHECK(out.clustering().size() == 1);
  }
  SUBCASE("dominating set instance") {
    const auto p = gen_setcover_metric(set_cover_example()).sampling;
    const auto out = solve_rds_greedy(p, 1.0, 0.0);
    REQUIRE(out.feasible());
    const auto& c = out.clustering();
    REQUIRE(c.size() == 3);
    CHECK(c.trajectories[0] == traj({1}));
    // The other two cover u1 (only in S1) and u5 (in S3, S4, S5).
    CHECK(c.trajectories[1] == traj({0}));
    CHECK((c.trajectories[2] == traj({2}) || c.trajectories[2] == traj({4})));
    CHECK(oracle_opt_k(p, 1.0, 0.0, Objective::center) == 3);
  }
  SUBCASE("no path leaves everything uncovered") {
    const TemporalSampling p(line_metric({0, 5}), {ids({0}), ids({1})});
    const auto out = solve_rds_greedy(p, 1.0, 1.0);
    REQUIRE_FALSE(out.feasible());
    CHECK(out.certificate().reason == InfeasibleReason::uncovered_points);
    CHECK(out.certificate().value == 2.0);
  }
  SUBCASE("stall with unreachable points") {
    // Point 2 in level 0 has no successor within delta and is far from 0.
    const TemporalSampling p(line_metric({0, 0.5, 50}), {ids({0, 2}), ids({1})});
    const auto out = solve_rds_greedy(p, 1.0, 1.0);
    REQUIRE_FALSE(out.feasible());
    CHECK(out.certificate().reason == InfeasibleReason::uncovered_points);
  }
}

TEST_CASE("bicriteria examples") {
  const TemporalSampling p(line_metric({0}), {ids({0}), ids({0})});
  const auto out = solve_bicriteria(p, 1, 0.0, 0.0);
  REQUIRE(out.feasible());
  CHECK(out.clustering().size() <= 2);
  CHECK(spatial_cost(p, out.clustering(), Objective::center) == 0.0);

  // Three far points in one level cannot be served by 2k = 2 paths.
  const TemporalSampling far(line_metric({0, 10, 20}), {ids({0, 1, 2})});
  const auto none = solve_bicriteria(far, 1, 1.0, 0.0);
  REQUIRE_FALSE(none.feasible());
  CHECK(none.certificate().reason == InfeasibleReason::flow_value_exceeds);
  CHECK_FALSE(oracle_feasible(far, 1, 1.0, 0.0, Objective::center).feasible);
}

TEST_CASE("random instances: soundness and guarantees against the oracle") {
  std::mt19937_64 rng(51);
  int feasible_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto p = tclust::testing::random_sampling(rng, 1 + trial % 4, 3, 5);
    const auto values = tclust::testing::distance_values(p);
    const double r = tclust::testing::pick(rng, values);
    const double delta = tclust::testing::pick(rng, values);
    const std::size_t k = 1 + trial % 3;
    const bool feasible = oracle_feasible(p, k, r, delta, Objective::center).feasible;

    const auto exact = solve_exact_k(p, k, r, delta);
    const auto bi = solve_bicriteria(p, k, r, delta);
    const auto greedy = solve_rds_greedy(p, r, delta);
    if (feasible) {
      ++feasible_seen;
      // Nets of a feasible instance never exceed k.
      for (const auto& net : level_nets(p, 2.0 * r)) CHECK(net.size() <= k);
      REQUIRE(exact.feasible());
      REQUIRE(bi.feasible());
      REQUIRE(greedy.feasible());
    }
    if (exact.feasible()) {
      CHECK(check_solution(p, exact.clustering(), k, 2 * r, 2 * r + delta, Objective::center).pass);
    }
    if (bi.feasible()) {
      CHECK(check_solution(p, bi.clustering(), 2 * k, 2 * r, r + delta, Objective::center).pass);
    }
    const auto opt = oracle_opt_k(p, r, delta, Objective::center);
    CHECK(greedy.feasible() == opt.has_value());
    if (greedy.feasible()) {
      const auto& c = greedy.clustering();
      CHECK(spatial_cost(p, c, Objective::center) <= r);
      CHECK(clustering_displacement(p.metric(), c) <= delta);
      CHECK(c.size() <= tclust::testing::ceil_ln(p.size()) * *opt);
    }
  }
  CHECK(feasible_seen > 100);
}

TEST_CASE("greedy gains never increase") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = tclust::testing::random_sampling(rng, 1 + trial % 4, 4, 6);
    const auto values = tclust::testing::distance_values(p);
    const double r = tclust::testing::pick(rng, values);
    const double delta = values.back();
    std::vector<std::size_t> gains;
    solve_rds_greedy(p, r, delta, [&](const CoverageState&, const TubeChoice& choice) {
      gains.push_back(choice.newly_covered);
    });
    CHECK(std::is_sorted(gains.rbegin(), gains.rend()));
  }
}

TEST_CASE("tube DP matches exhaustive maximum at every greedy step") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = tclust::testing::random_sampling(rng, 1 + trial % 4, 4, 6);
    const auto values = tclust::testing::distance_values(p);
    const double r = tclust::testing::pick(rng, values);
    const double delta = tclust::testing::pick(rng, values);
    const auto all = tclust::testing::product_trajectories(p, delta);
    REQUIRE(all.size() <= 256);
    solve_rds_greedy(p, r, delta, [&](const CoverageState& before, const TubeChoice& choice) {
      std::size_t best = 0;
      for (const auto& tau : all) best = std::max(best, tube_gain(p, tau, r, before));
      CHECK(choice.newly_covered == best);
      CHECK(tube_gain(p, choice.trajectory, r, before) == best);
      CHECK(displacement(p.metric(), choice.trajectory) <= delta);
    });
  }
}
