#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "grassgeo/errors.hpp"
#include "grassgeo/lab.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using namespace testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("random_projection_pair: generic mode stays inside the unit ball") {
  for (std::uint64_t seed : {7ull, 19ull, 64ull}) {
    const auto pair = lab::random_projection_pair(4, 2, lab::PairMode::kGeneric, seed);
    CHECK(pair.first.rank() == 2);
    CHECK(pair.second.rank() == 2);
    CHECK(hermitian_operator_norm(pair.first.matrix() - pair.second.matrix()) < 1.0);
  }
}

TEST_CASE("random_projection_pair: boundary mode hits distance one") {
  for (std::uint64_t seed : {1ull, 5ull, 23ull}) {
    const auto pair = lab::random_projection_pair(4, 2, lab::PairMode::kBoundary, seed);
    const double dist = hermitian_operator_norm(pair.first.matrix() - pair.second.matrix());
    CHECK(std::abs(dist - 1.0) <= 1e-10);
  }
}

TEST_CASE("random_projection_pair: bitwise deterministic per seed") {
  for (auto mode : {lab::PairMode::kGeneric, lab::PairMode::kBoundary}) {
    const auto a = lab::random_projection_pair(5, 2, mode, 42);
    const auto b = lab::random_projection_pair(5, 2, mode, 42);
    CHECK(max_abs_diff(a.first.matrix(), b.first.matrix()) == 0.0);
    CHECK(max_abs_diff(a.second.matrix(), b.second.matrix()) == 0.0);
  }
  CHECK_THROWS_AS(lab::random_projection_pair(4, 0, lab::PairMode::kGeneric, 1),
                  InvalidInput);
  CHECK_THROWS_AS(lab::random_projection_pair(4, 4, lab::PairMode::kGeneric, 1),
                  InvalidInput);
}

TEST_CASE("competitor_curve: endpoints match bitwise and samples stay on orbit") {
  CounterRng rng(71);
  const auto pair = lab::random_projection_pair(5, 2, lab::PairMode::kGeneric, 31);
  const SkewHermitian z = grass_log_bv(pair.first, pair.second).direction;
  const SkewHermitian y = random_skew(rng, 5);
  const DiscretizedCurve gamma = lab::competitor_curve(pair.first, z, y, 0.5, 32);

  CHECK(max_abs_diff(gamma.points.front(), pair.first.matrix()) == 0.0);
  const DiscretizedCurve geo = lab::sample_grass_geodesic(pair.first, z, 32);
  CHECK(schatten_norm(gamma.points.back() - geo.points.back(), 2.0) <= 1e-12);

  validate_curve(gamma);  // every sample is a projection at tolerance 1e-8

  CHECK_THROWS_AS(lab::competitor_curve(pair.first, z, y, 0.5, 1), InvalidInput);
}

TEST_CASE("amplitude zero reproduces the geodesic exactly") {
  const auto pair = lab::random_projection_pair(5, 2, lab::PairMode::kGeneric, 32);
  const SkewHermitian z = grass_log_bv(pair.first, pair.second).direction;
  const DiscretizedCurve a = lab::competitor_curve(pair.first, z, SkewHermitian::zero(5), 0.0, 64);
  const DiscretizedCurve b = lab::sample_grass_geodesic(pair.first, z, 64);
  for (std::size_t j = 0; j < a.points.size(); ++j)
    CHECK(max_abs_diff(a.points[j], b.points[j]) == 0.0);
}

TEST_CASE("minimality_experiment: margins and report invariants") {
  const auto report = lab::minimality_experiment(4, 2, 2.0, 6, 8, 128, 0.3, 42);
  REQUIRE(report.trials.size() == 6);
  for (const auto& t : report.trials) {
    CHECK(t.dim == 4);
    CHECK(t.rank == 2);
    CHECK(t.k == 2.0);
    CHECK(t.margin == t.best_competitor_length - t.geodesic_length);
    CHECK(t.endpoint_error <= 1e-8);
    CHECK(t.margin >= -report.tol_disc);
  }
  CHECK(report.min_margin() >= -report.tol_disc);
  CHECK(report.positive_margin_fraction() > 0.9);

  // uniqueness clause, statistically: at amplitude > 0.1 a competitor
  // essentially never matches the geodesic length within tol_disc
  int near_minimal = 0;
  for (const auto& t : report.trials)
    if (t.margin < report.tol_disc) ++near_minimal;
  CHECK(static_cast<double>(near_minimal) <= 0.01 * report.trials.size());

  // amplitude zero: competitors equal the geodesic, margins vanish
  const auto zero_amp = lab::minimality_experiment(4, 2, 2.0, 4, 4, 64, 0.0, 7);
  for (const auto& t : zero_amp.trials) {
    CHECK(std::abs(t.margin) <= 1e-9);
  }

  CHECK_THROWS_AS(lab::minimality_experiment(4, 2, 1.5, 2, 2, 64, 0.3, 1), InvalidInput);
  CHECK_THROWS_AS(lab::minimality_experiment(4, 2, 0.5, 2, 2, 64, 0.3, 1), InvalidInput);
}

TEST_CASE("minimality_experiment: deterministic per (config, seed)") {
  const auto a = lab::minimality_experiment(4, 2, 3.0, 4, 4, 64, 0.4, 99);
  const auto b = lab::minimality_experiment(4, 2, 3.0, 4, 4, 64, 0.4, 99);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].seed == b.trials[i].seed);
    CHECK(a.trials[i].geodesic_length == b.trials[i].geodesic_length);
    CHECK(a.trials[i].best_competitor_length == b.trials[i].best_competitor_length);
    CHECK(a.trials[i].margin == b.trials[i].margin);
  }
  CHECK(a.tol_disc == b.tol_disc);
}

TEST_CASE("unitary_minimality_experiment: margins and the length oracle") {
  const auto report = lab::unitary_minimality_experiment(4, 6, 8, 128, 0.3, 11);
  REQUIRE(report.trials.size() == 6);
  for (const auto& t : report.trials) {
    CHECK(t.margin >= -report.tol_disc);
    CHECK(t.endpoint_error <= 1e-12);
    // discretized geodesic length approximates ||x||_2 = geodesic_length + defect
    CHECK(t.geodesic_length > 0.0);
  }
  CHECK(report.min_margin() >= -report.tol_disc);
}

TEST_CASE("metric_sandwich_experiment: slacks stay nonnegative") {
  const auto report = lab::metric_sandwich_experiment(6, 40, 2024);
  CHECK(report.min_lower_slack >= -1e-10);
  CHECK(report.min_upper_slack >= -1e-10);
  CHECK(report.trials == 40);

  const auto again = lab::metric_sandwich_experiment(6, 40, 2024);
  CHECK(report.min_lower_slack == again.min_lower_slack);
  CHECK(report.min_upper_slack == again.min_upper_slack);
}

TEST_CASE("sandwich_lower_constant matches the closed form") {
  CHECK(lab::sandwich_lower_constant() ==
        doctest::Approx(std::sqrt(1.0 - kPi * kPi / 12.0)).epsilon(1e-15));
  CHECK(lab::sandwich_lower_constant() == doctest::Approx(0.42135).epsilon(1e-4));
}
