#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tclust/error.hpp"
#include "tclust/generators.hpp"
#include "tclust/io.hpp"
#include "tclust/sampling.hpp"

using namespace tclust;
using tclust::testing::ids;
using tclust::testing::line_metric;
using tclust::testing::traj;

TEST_CASE("sampling construction errors") {
  const auto m = line_metric({0, 1, 2});
  CHECK_THROWS_AS(TemporalSampling(m, {}), InvalidArgumentError);
  CHECK_THROWS_AS(TemporalSampling(m, {ids({0}), {}}), InvalidArgumentError);
  CHECK_THROWS_AS(TemporalSampling(m, {ids({0, 0})}), InvalidArgumentError);
  CHECK_THROWS_AS(TemporalSampling(m, {ids({3})}), InvalidPointError);
  const TemporalSampling p(m, {ids({0, 1}), ids({1, 2})});
  CHECK(p.size() == 4);
  CHECK(p.length() == 2);
  CHECK(p.slot_of(1, {2}) == 1);
  CHECK_FALSE(p.slot_of(0, {2}).has_value());
  CHECK(p.support() == ids({0, 1, 2}));
}

TEST_CASE("displacement") {
  const auto m = line_metric({0, 5, 2, 9});
  CHECK(displacement(m, traj({1, 1, 1})) == 0.0);
  CHECK(displacement(m, traj({0, 1})) == 5.0);
  // consecutive distances 2 then 7
  CHECK(displacement(m, traj({0, 2, 3})) == 7.0);
  CHECK(displacement(m, traj({3})) == 0.0);
}

TEST_CASE("clustering displacement") {
  const auto m = line_metric({0, 1, 4});
  CHECK(clustering_displacement(m, Clustering{{traj({0, 1})}}) == 1.0);
  CHECK(clustering_displacement(m, Clustering{{traj({0, 1}), traj({0, 2})}}) == 4.0);
  CHECK(clustering_displacement(m, Clustering{{traj({0, 0}), traj({2, 2})}}) == 0.0);
  CHECK_THROWS_AS(clustering_displacement(m, Clustering{}), EmptyClusteringError);
}

TEST_CASE("spatial cost objectives") {
  const TemporalSampling single(line_metric({0, 3}), {ids({0, 1})});
  const Clustering at_zero{{traj({0})}};
  CHECK(spatial_cost(single, at_zero, Objective::center) == 3.0);
  CHECK(spatial_cost(single, at_zero, Objective::median) == 3.0);
  CHECK(spatial_cost(single, at_zero, Objective::means) == 9.0);

  const TemporalSampling two(line_metric({0, 1, 2}), {ids({0, 1}), ids({1, 2})});
  const Clustering every{{traj({0, 1}), traj({1, 2})}};
  for (auto obj : {Objective::center, Objective::median, Objective::means}) {
    CHECK(spatial_cost(two, every, obj) == 0.0);
  }
  CHECK(spatial_cost(two, Clustering{}, Objective::center) == std::numeric_limits<double>::infinity());
}

TEST_CASE("stationary clustering of the collinear fixture has zero median cost") {
  const auto p = collinear_pair_instance(1.0);
  Clustering stationary;
  for (std::size_t j = 0; j < 5; ++j) stationary.trajectories.push_back(traj({j, j}));
  CHECK(spatial_cost(p, stationary, Objective::median) == 0.0);
  for (double delta : {0.0, 1.0, 1.5}) {
    CHECK(check_solution(p, stationary, 5, 0.0, delta, Objective::median).pass);
  }
}

TEST_CASE("check_solution reports violations") {
  const TemporalSampling p(line_metric({0, 1, 10}), {ids({0, 2}), ids({1, 2})});
  const Clustering c{{traj({0, 1})}};
  const auto report = check_solution(p, c, 1, 5.0, 1.0, Objective::center);
  CHECK_FALSE(report.pass);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].bound == Bound::radius);
  CHECK(report.violations[0].actual == 10.0);
  CHECK(report.violations[0].limit == 5.0);

  const auto all = check_solution(p, c, 0, 1.0, 0.5, Objective::center);
  CHECK(all.violations.size() == 3);
  CHECK(check_solution(p, Clustering{{traj({0, 1}), traj({2, 2})}}, 2, 0.0, 1.0,
                       Objective::center).pass);
  CHECK_THROWS_AS(check_solution(p, Clustering{{traj({1, 1})}}, 1, 1, 1, Objective::center),
                  StructuralError);
  CHECK_THROWS_AS(check_solution(p, Clustering{{traj({0})}}, 1, 1, 1, Objective::center),
                  StructuralError);
}

TEST_CASE("random clusterings: objective ordering, monotonicity, self-consistency") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = tclust::testing::random_sampling(rng, 1 + trial % 4, 4, 6);
    const auto all = tclust::testing::product_trajectories(p, 1e9);
    Clustering c;
    const std::size_t k = 1 + trial % 3;
    for (std::size_t j = 0; j < k; ++j) c.trajectories.push_back(tclust::testing::pick(rng, all));
    std::size_t largest = 0;
    for (const auto& level : p.levels()) largest = std::max(largest, level.size());
    const double center = spatial_cost(p, c, Objective::center);
    const double median = spatial_cost(p, c, Objective::median);
    CHECK(center <= median);
    CHECK(median <= static_cast<double>(largest) * center);

    Clustering bigger = c;
    bigger.trajectories.push_back(tclust::testing::pick(rng, all));
    for (auto obj : {Objective::center, Objective::median, Objective::means}) {
      CHECK(spatial_cost(p, bigger, obj) <= spatial_cost(p, c, obj));
    }

    const auto s = compute_stats(p, c);
    CHECK(check_solution(p, c, s.k, s.rad_inf, s.delta, Objective::center).pass);
    CHECK(check_solution(p, c, s.k, s.rad_1, s.delta, Objective::median).pass);
    CHECK(check_solution(p, c, s.k, s.rad_2, s.delta, Objective::means).pass);
  }
}

TEST_CASE("instance round trips") {
  SUBCASE("minimal euclidean") {
    const TemporalSampling p(FiniteMetric::euclidean(2, {{0.5, -1.25}}), {ids({0})});
    CHECK(load_instance(save_instance(p)) == p);
  }
  SUBCASE("matrix") {
    std::mt19937_64 rng(3);
    const auto p = tclust::testing::random_sampling(rng, 3, 3, 5);
    CHECK(load_instance(save_instance(p)) == p);
  }
  SUBCASE("clustering") {
    const Clustering c{{traj({0, 1}), traj({0, 1}), traj({2, 0})}};
    CHECK(load_clustering(save_clustering(c)) == c);
  }
}

TEST_CASE("instance parse errors carry locations") {
  auto message = [](const std::string& text) {
    try {
      load_instance(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string metric = R"("metric":{"kind":"euclidean","dim":1},"points":[[0],[1]])";
  CHECK(message("{" + metric + R"(,"levels":[]})").find("no levels") != std::string::npos);
  CHECK(message("{" + metric + R"(,"levels":[[0],[]]})").find("$.levels[1]") == 0);
  CHECK(message("{" + metric + R"(,"levels":[[0],[0,7]]})").find("$.levels[1][1]") == 0);
  CHECK(message(R"({"metric":{"kind":"matrix","n":3,"dist":[[0,1,5],[1,0,1],[5,1,0]]},"levels":[[0]]})")
            .find("triangle inequality violated") != std::string::npos);
  CHECK(message("{not json").find("$") == 0);
  CHECK_THROWS_AS(load_instance("{" + metric + R"(,"levels":[]})"), ParseError);
  CHECK_THROWS_AS(
      load_instance(R"({"metric":{"kind":"matrix","n":2,"dist":[[0,1],[2,0]]},"levels":[[0]]})"),
      ValidationError);
}

TEST_CASE("validation can be skipped and tolerance applied on load") {
  const std::string bad = R"({"metric":{"kind":"matrix","n":3,"dist":[[0,1,5],[1,0,1],[5,1,0]]},"levels":[[0,2]]})";
  LoadOptions lo;
  lo.validate_metric = false;
  lo.tolerance = 0.25;
  const auto p = load_instance(bad, lo);
  CHECK(p.metric().tolerance() == 0.25);
  CHECK(p.metric().distance({0}, {2}) == 5.0);
}
