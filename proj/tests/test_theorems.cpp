#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cosmic/operators.hpp"
#include "cosmic/theorems.hpp"

using namespace cosmic;

namespace {

const Vec kEven{2.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)};
const Vec kOdd{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

}  // namespace

TEST_CASE("operator property checks") {
  const SamplingBox box;
  const auto tr = make_translation(Vec{0.6, -0.8});
  CHECK(check_nonexpansive(tr, 1000, box, 0.0).worst_violation == 0.0);
  CHECK(check_nonexpansive(make_identity(3), 1000, box, 0.0).worst_violation == 0.0);

  const auto rot = make_rotation_2d(std::numbers::pi / 2);
  CHECK(check_nonexpansive(rot, 1000, box, 1e-9).pass);
  const auto firm_rot = check_firmly_nonexpansive(rot, 1000, {-1.0, 1.0}, 1e-9);
  CHECK_FALSE(firm_rot.pass);
  CHECK(firm_rot.worst_violation > 0.1);

  const auto planar = make_paper_2d(PaperParams(8));
  CHECK(check_nonexpansive(planar, 10000, box, 1e-9).pass);
  CHECK(check_firmly_nonexpansive(planar, 10000, box, 1e-9).pass);
  // Points near the curve exercise the max-active case.
  CHECK(check_firmly_nonexpansive(planar, 10000, {-5.0, 400.0}, 1e-9).pass);
  CHECK(check_nonexpansive(planar, 10000, {-5.0, 400.0}, 1e-9).pass);

  const auto seq = make_sequence_space(64);
  CHECK(check_firmly_nonexpansive(seq, 2000, {-20.0, 20.0}, 1e-9).pass);
  CHECK(check_displacement_bound(planar, 1.0, 10000, box, 1e-9).pass);

  CHECK_THROWS_AS(check_nonexpansive(tr, 0, box, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_nonexpansive(tr, 10, {1.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("checks are deterministic in the seed") {
  const auto planar = make_paper_2d(PaperParams(5));
  const auto a = check_separating_hyperplane(planar, kEven, 500, {}, 1e-8, 7);
  const auto b = check_separating_hyperplane(planar, kEven, 500, {}, 1e-8, 7);
  const auto c = check_separating_hyperplane(planar, kEven, 500, {}, 1e-8, 8);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.witness != c.witness);
  CHECK(a.seed == 7);
}

TEST_CASE("separating hyperplane") {
  const auto planar = make_paper_2d(PaperParams(8));
  CHECK(check_separating_hyperplane(planar, kEven, 10000, {}, 1e-8).pass);
  CHECK(check_separating_hyperplane(planar, kOdd, 10000, {}, 1e-8).pass);
  const auto bad = check_separating_hyperplane(planar, Vec{0.0, -1.0}, 10000, {}, 1e-8);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_violation > 0.0);

  const auto tr = make_translation(Vec{0.6, -0.8});
  CHECK(check_separating_hyperplane(tr, Vec{0.8, 0.6}, 100, {}, 0.0).worst_violation ==
        doctest::Approx(0.0).epsilon(1e-16));
  CHECK_THROWS_AS(check_separating_hyperplane(tr, Vec{1.0, 1.0}, 10, {}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("monotone inner product") {
  const auto tr = make_translation(Vec{0.6, -0.8});
  const auto t = iterate(tr, Vec{0.0, 0.0}, 100, GeometricSchedule{2.0});
  const auto r = check_monotone_inner(t, Vec{-0.6, 0.8}, 0.0);
  CHECK(r.pass);
  CHECK(r.worst_violation <= 0.0);
  CHECK(r.metrics.at("growth") == doctest::Approx(100.0));

  const auto perp = check_monotone_inner(t, Vec{0.8, 0.6}, 1e-12);
  CHECK(perp.pass);
  CHECK(std::abs(perp.metrics.at("growth")) < 1e-12);

  const auto wrong = check_monotone_inner(t, Vec{0.6, -0.8}, 1e-8);
  CHECK_FALSE(wrong.pass);

  Trajectory lone;
  lone.start = {0.0, 0.0};
  CHECK_THROWS_AS(check_monotone_inner(lone, Vec{1.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("pairwise inner products") {
  const auto r = check_pairwise_nonneg({kEven, kOdd}, 0.0);
  CHECK(r.pass);
  CHECK(r.metrics.at("min_inner_product") == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(check_pairwise_nonneg({kEven}, 0.0).worst_violation == doctest::Approx(-1.0));
  const auto orth = check_pairwise_nonneg({Vec{1.0, 0.0}, Vec{0.0, 1.0}}, 0.0);
  CHECK(orth.worst_violation == 0.0);
  CHECK(orth.pass);
  CHECK_FALSE(check_pairwise_nonneg({Vec{1.0, 0.0}, Vec{-0.6, 0.8}}, 0.0).pass);
  CHECK_THROWS_AS(check_pairwise_nonneg({}, 0.0), std::invalid_argument);
}

TEST_CASE("cone inclusion") {
  const auto planar = make_paper_2d(PaperParams(8));
  CHECK(check_cone_inclusion_2d(kEven, planar, 10000, {}, 1e-9).pass);
  CHECK(check_cone_inclusion_2d(kOdd, planar, 10000, {}, 1e-9).pass);
  CHECK_FALSE(check_cone_inclusion_2d(Vec{0.0, -1.0}, planar, 10000, {}, 1e-9).pass);

  const auto tr = make_translation(Vec{0.6, -0.8});
  CHECK(check_cone_inclusion_2d(Vec{-0.6, 0.8}, tr, 100, {}, 1e-9).pass);
  CHECK_FALSE(check_cone_inclusion_2d(Vec{0.6, -0.8}, tr, 100, {}, 1e-9).pass);

  const auto rot = make_rotation_2d(std::numbers::pi / 2);
  const auto full = check_cone_inclusion_2d(Vec{0.0, -1.0}, rot, 1000, {}, 1e-9);
  CHECK(full.pass);
  CHECK(full.worst_violation == 0.0);

  CHECK_THROWS_AS(check_cone_inclusion_2d(kEven, make_identity(2), 10, {}, 1e-9),
                  std::domain_error);
  CHECK_THROWS_AS(check_cone_inclusion_2d(Vec{1.0, 0.0, 0.0}, make_identity(3), 10, {}, 1e-9),
                  std::invalid_argument);
}
