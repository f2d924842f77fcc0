#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cosmic/engine.hpp"
#include "cosmic/operators.hpp"
#include "cosmic/prox2d.hpp"
#include "cosmic/seqspace.hpp"

using namespace cosmic;

TEST_CASE("schedules") {
  CHECK(to_string(parse_schedule("geometric:10")) == "geometric:10");
  CHECK(to_string(parse_schedule("levels")) == "levels");
  CHECK(to_string(parse_schedule("list:5,1,20")) == "list:5,1,20");
  CHECK_THROWS_AS(parse_schedule("geometric:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("geometric:x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("list:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("list:3,a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("every:3"), std::invalid_argument);

  const auto op = make_identity(1);
  const auto t = iterate(op, Vec{1.0}, 100000, GeometricSchedule{10.0});
  REQUIRE(t.checkpoints.size() == 6);
  std::size_t expect = 1;
  for (const auto& c : t.checkpoints) {
    CHECK(c.k == expect);
    expect *= 10;
  }
  const auto e = iterate(op, Vec{1.0}, 50, ExplicitSchedule{{40, 0, 7, 7, 90}});
  REQUIRE(e.checkpoints.size() == 3);
  CHECK(e.checkpoints[0].k == 0);
  CHECK(e.checkpoints[0].step.empty());
  CHECK(e.checkpoints[2].k == 40);
  CHECK_THROWS_AS(iterate(op, Vec{1.0}, 10, LevelCrossingSchedule{}), std::invalid_argument);
  CHECK_THROWS_AS(iterate(op, Vec{1.0, 2.0}, 10, GeometricSchedule{2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(iterate(op, Vec{1.0}, 0, GeometricSchedule{2.0}), std::invalid_argument);
}

TEST_CASE("translation trajectory") {
  const Vec v{0.6, -0.8};
  const auto op = make_translation(v);
  std::size_t calls = 0;
  const auto t = iterate(op, Vec{0.0, 0.0}, 10, ExplicitSchedule{{1, 2, 3, 10}},
                         [&](std::size_t, std::span<const double>, std::span<const double>) {
                           ++calls;
                         });
  CHECK(calls == 10);
  CHECK(t.steps == 10);
  CHECK(t.tail_last[0] == doctest::Approx(-6.0).epsilon(1e-14));
  CHECK(t.tail_last[1] == doctest::Approx(8.0).epsilon(1e-14));

  for (const auto& d : directions(t, 0.5)) {
    CHECK(std::abs(d.unit[0] + 0.6) <= 1e-12);
    CHECK(std::abs(d.unit[1] - 0.8) <= 1e-12);
    CHECK(norm(d.unit) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto est = min_displacement_estimates(t);
  CHECK(est.baillon == v);
  CHECK(std::abs(est.pazy[0] - 0.6) <= 1e-15);
  CHECK(std::abs(est.pazy[1] + 0.8) <= 1e-15);

  Trajectory empty;
  CHECK_THROWS_AS(min_displacement_estimates(empty), std::invalid_argument);
  CHECK_THROWS_AS(directions(t, 0.0), std::invalid_argument);
}

TEST_CASE("level-crossing schedule and guard on the planar operator") {
  const auto op = make_paper_2d(PaperParams(4));
  const auto t = iterate(op, Vec{0.0, 0.0}, 1000000, LevelCrossingSchedule{});
  CHECK(t.stopped_by_guard);
  CHECK(op.level(t.tail_last) <= -3.0);
  REQUIRE(t.checkpoints.size() == 3);
  for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
    CHECK(t.checkpoints[i].level <= -static_cast<double>(i + 1));
    CHECK(t.checkpoints[i].level > -static_cast<double>(i + 2));
  }
  // Divergence: norms grow along the recorded iterates.
  for (std::size_t i = 1; i < t.checkpoints.size(); ++i) {
    CHECK(norm(t.checkpoints[i].x) > norm(t.checkpoints[i - 1].x));
  }
  const auto j = to_json(t);
  CHECK(j.at("checkpoints").size() == 3);
  CHECK(j.at("stopped_by_guard") == true);
}

TEST_CASE("bounded gap between trajectories from different starts") {
  const auto op = make_paper_2d(PaperParams(6));
  const ExplicitSchedule sched{{1, 10, 100, 1000, 10000, 100000, 1000000}};
  const auto a = iterate(op, Vec{0.0, 0.0}, 1000000, sched);
  const auto b = iterate(op, Vec{10.0, -7.0}, 1000000, sched);
  const double gap0 = std::hypot(10.0, 7.0);
  REQUIRE(a.checkpoints.size() == b.checkpoints.size());
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    const Vec& x = a.checkpoints[i].x;
    const Vec& y = b.checkpoints[i].x;
    CHECK(std::hypot(x[0] - y[0], x[1] - y[1]) <= gap0 * (1.0 + 1e-12));
  }
}

TEST_CASE("sequence-space trajectory matches the recursion") {
  const auto op = make_sequence_space(1);
  const auto t = iterate(op, Vec{0.0}, 100, ExplicitSchedule{{100}});
  const auto [lo, hi] = lemma_bounds(100, 1.0);
  CHECK(t.checkpoints.at(0).x[0] >= lo);
  CHECK(t.checkpoints.at(0).x[0] <= hi);
  CHECK(t.checkpoints.at(0).x[0] == univariate_recursion(1.0, 100)[100]);
}

TEST_CASE("clustering") {
  const std::vector<Vec> same(7, Vec{0.6, 0.8});
  const auto one = cluster_directions(same, 0.1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].count == 7);

  std::vector<Vec> alt;
  for (int n = 20; n <= 40; ++n) {
    const Point2 d = analytic_direction(n);
    alt.push_back({d[0], d[1]});
  }
  const auto two = cluster_directions(alt, 0.1);
  REQUIRE(two.size() == 2);
  const Vec even{2.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)};
  const Vec odd{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  CHECK(two[0].count + two[1].count == alt.size());
  for (const auto& c : two) {
    const double de = std::hypot(c.center[0] - even[0], c.center[1] - even[1]);
    const double dd = std::hypot(c.center[0] - odd[0], c.center[1] - odd[1]);
    CHECK(std::min(de, dd) < 0.02);
  }

  const std::vector<Vec> apart{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  CHECK(cluster_directions(apart, 0.5).size() == 4);
  CHECK(cluster_directions({}, 0.1).empty());
  CHECK_THROWS_AS(cluster_directions(same, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cluster_directions(same, 2.0), std::invalid_argument);
}

TEST_CASE("ball map") {
  CHECK(ball_map(Vec{0.0, 0.0}) == Vec{0.0, 0.0});
  const Vec b = ball_map(Vec{3.0, 4.0});
  CHECK(b[0] == doctest::Approx(0.5));
  CHECK(b[1] == doctest::Approx(2.0 / 3.0));
  const Vec far = ball_map(Vec{0.6e12, 0.8e12});
  CHECK(std::abs(far[0] - 0.6) < 1e-11);
  CHECK(std::abs(far[1] - 0.8) < 1e-11);
  CHECK(norm(far) < 1.0);
}

TEST_CASE("cosmic report uses the later half of directions") {
  const auto op = make_translation(Vec{0.0, -1.0});
  const auto t = iterate(op, Vec{-30.0, 0.0}, 1000, GeometricSchedule{2.0});
  const auto r = cosmic_report(t, {.min_norm = 10.0, .eps_angle = 0.1});
  REQUIRE_FALSE(r.clusters.empty());
  // Early directions point along the start offset; the tail ones along +y.
  CHECK(r.clusters.back().center[1] > 0.99);
  const auto j = to_json(r);
  CHECK(j.at("v_hat_baillon") == nlohmann::json::array({0.0, -1.0}));
}
