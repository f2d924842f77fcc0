#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cosmic/prox2d.hpp"
#include "oracles.hpp"

using namespace cosmic;

namespace {

double gamma_gap(const MaxSeparable2D& op, Point2 p) {
  const double a = eval(op.phi(), p[0]);
  return std::abs(a - eval(op.psi(), p[1])) / (1.0 + std::abs(a));
}

double dist(Point2 a, Point2 b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST_CASE("breakpoint sums") {
  CHECK(xi(0) == 0.0);
  CHECK(xi(3) == 32.0);
  CHECK(xi(5) == 3413.0);
  CHECK(zeta(0) == 0.0);
  CHECK(zeta(3) == 30.0);
  CHECK(zeta(4) == 158.0);
  CHECK(std::isfinite(xi(100)));
  CHECK_THROWS_AS(xi(-1), std::out_of_range);
  CHECK_THROWS_AS(zeta(101), std::out_of_range);
  CHECK_THROWS_AS(PaperParams(1), std::out_of_range);
  CHECK_THROWS_AS(PaperParams(101), std::out_of_range);
}

TEST_CASE("planar operator shape") {
  const auto op = build_paper_operator(PaperParams(7));
  for (int n = 1; n <= 7; ++n) {
    CHECK(eval(op.phi(), xi(n)) == doctest::Approx(-n).epsilon(1e-14));
    CHECK(eval(op.psi(), zeta(n)) == doctest::Approx(-n).epsilon(1e-14));
  }
  CHECK(paper_psi_step(PaperParams(7))(2.0) == -0.5);
  CHECK(level(op, {0.0, 0.0}) == 0.0);
  CHECK(level(op, {5.0, 3.0}) == doctest::Approx(-2.0));
  CHECK(level(op, {5.0, 0.0}) == 0.0);

  const Point2 g = gamma_point(op, -1.5);
  CHECK(g[0] == doctest::Approx(3.0));
  CHECK(g[1] == doctest::Approx(2.0));
  CHECK(gamma_point(op, 0.0) == Point2{0.0, 0.0});
  for (int n = 1; n <= 7; ++n) {
    const Point2 p = gamma_point(op, -n);
    CHECK(p[0] == doctest::Approx(xi(n)));
    CHECK(p[1] == doctest::Approx(zeta(n)));
  }

  auto lin = PiecewiseLinearConvexFn({1.0}, {0.0}, {-1.0, -0.5});
  CHECK_THROWS_AS(MaxSeparable2D(lin, op.psi()), std::invalid_argument);
}

TEST_CASE("prox_max examples") {
  const auto op = build_paper_operator(PaperParams(6));
  const Point2 a = prox_max(op, {0.0, 30.0}, 1e-12);
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[1] == 30.0);
  CHECK(prox_max_detail(op, {0.0, 30.0}, 1e-12).active == ProxCase::XOnly);

  const Point2 b = prox_max(op, {-5.0, 0.0}, 1e-12);
  CHECK(level(op, b) <= level(op, {-5.0, 0.0}));
  CHECK(dist(b, {-5.0, 0.0}) <= 1.0 + 1e-9);

  const auto c = prox_max_detail(op, {0.0, 0.0}, 1e-12);
  CHECK(c.point[0] > 0.0);
  CHECK(c.point[0] <= 1.0);
  CHECK(c.point[1] > 0.0);
  CHECK(c.point[1] <= 1.0);
  CHECK(gamma_gap(op, c.point) <= 1e-12);
  CHECK_THROWS_AS(prox_max(op, {0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("prox_max agrees with nested golden-section minimization") {
  const auto op = build_paper_operator(PaperParams(4));
  auto f = [&](double u, double v) { return std::max(eval(op.phi(), u), eval(op.psi(), v)); };
  oracle::Gen gen(21);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point2 p{gen.uniform(-5.0, 300.0), gen.uniform(-5.0, 170.0)};
    const auto [u, v] = oracle::nested_prox(f, p[0], p[1]);
    const Point2 got = prox_max(op, p, 1e-12);
    worst = std::max(worst, dist(got, {u, v}));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("fast path agrees with the general path") {
  const auto op = build_paper_operator(PaperParams(8));
  oracle::Gen gen(22);
  for (int i = 0; i < 20000; ++i) {
    Point2 p;
    if (i % 2 == 0) {
      p = {gen.uniform(-50.0, 2e7), gen.uniform(-50.0, 1e7)};
    } else {
      // Near the level-matching curve, where the max-active case fires.
      const Point2 g = gamma_point(op, gen.uniform(-7.9, 0.0));
      p = {g[0] + gen.uniform(-1.0, 1.0), g[1] + gen.uniform(-1.0, 1.0)};
    }
    const auto slow = prox_max_detail(op, p, 1e-12);
    const auto fast = prox_max_fast(op, p, 1e-12);
    CHECK(dist(slow.point, fast.point) <= 1e-10 * (1.0 + std::hypot(p[0], p[1])));
  }
}

TEST_CASE("property: step bound, non-expansive and firmly non-expansive") {
  const auto op = build_paper_operator(PaperParams(8));
  oracle::Gen gen(23);
  for (int i = 0; i < 10000; ++i) {
    const Point2 u{gen.uniform(-1e3, 5e3), gen.uniform(-1e3, 5e3)};
    const Point2 w{u[0] + gen.uniform(-20.0, 20.0), u[1] + gen.uniform(-20.0, 20.0)};
    const auto ru = prox_max_detail(op, u, 1e-12);
    const auto rw = prox_max_detail(op, w, 1e-12);
    CHECK(std::hypot(ru.shift[0], ru.shift[1]) <= 1.0 + 1e-9);
    const double du[2] = {u[0] - w[0], u[1] - w[1]};
    const double dt[2] = {ru.point[0] - rw.point[0], ru.point[1] - rw.point[1]};
    const double ntu = std::hypot(du[0], du[1]);
    const double ntt = std::hypot(dt[0], dt[1]);
    CHECK(ntt <= ntu * (1.0 + 1e-9));
    CHECK(dt[0] * dt[0] + dt[1] * dt[1] <= dt[0] * du[0] + dt[1] * du[1] + 1e-9);
  }
}

TEST_CASE("property: iterates stay on the curve and descend") {
  const auto op = build_paper_operator(PaperParams(5));
  Point2 p{0.0, 0.0};
  double prev = level(op, p);
  double max_gap = 0.0;
  for (int k = 0; k < 200000; ++k) {
    const auto r = prox_max_fast(op, p, 1e-12);
    CHECK(std::hypot(r.shift[0], r.shift[1]) <= 1.0 + 1e-9);
    p = r.point;
    const double lv = level(op, p);
    max_gap = std::max(max_gap, gamma_gap(op, p));
    if (lv > -4.0) REQUIRE(lv < prev);
    prev = lv;
  }
  CHECK(max_gap <= 1e-8);
}

TEST_CASE("property: edge invariance from near-curve starts") {
  const auto op = build_paper_operator(PaperParams(6));
  oracle::Gen gen(24);
  const double tol = 1e-10;
  for (int i = 0; i < 2000; ++i) {
    Point2 p = gamma_point(op, gen.uniform(-5.5, 0.0));
    p[0] += gen.uniform(-tol, tol);
    CHECK(gamma_gap(op, prox_max(op, p, 1e-12)) <= 10.0 * std::max(tol, gamma_gap(op, p)));
  }
}

TEST_CASE("analytic directions") {
  const Point2 d4 = analytic_direction(4);
  CHECK(d4[0] == doctest::Approx(288.0 / std::hypot(288.0, 158.0)).epsilon(1e-15));
  CHECK(d4[0] == doctest::Approx(0.87672959).epsilon(1e-8));
  CHECK(d4[1] == doctest::Approx(0.48098360).epsilon(1e-8));
  const Point2 d5 = analytic_direction(5);
  CHECK(d5[0] == doctest::Approx(0.72069915).epsilon(1e-8));
  CHECK(d5[1] == doctest::Approx(0.69324796).epsilon(1e-8));
  CHECK_THROWS_AS(analytic_direction(0), std::out_of_range);

  const Point2 even{2.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)};
  const Point2 odd{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  for (int n = 2; n <= 100; ++n) {
    const Point2 d = analytic_direction(n);
    CHECK(std::hypot(d[0], d[1]) == doctest::Approx(1.0).epsilon(1e-15));
    if (n >= 20) CHECK(dist(d, n % 2 == 0 ? even : odd) <= 5.0 / n);
  }
}

TEST_CASE("operator json round trip") {
  const auto op = build_paper_operator(PaperParams(5));
  const auto j = to_json(op, 5);
  CHECK(j.at("n_max") == 5);
  const auto back = max_separable_from_json(j);
  CHECK(back.phi().knots() == op.phi().knots());
  CHECK(back.psi().slopes() == op.psi().slopes());
}
