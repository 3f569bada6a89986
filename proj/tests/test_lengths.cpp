#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "grassgeo/errors.hpp"
#include "grassgeo/grassmannian.hpp"
#include "grassgeo/lab.hpp"
#include "grassgeo/lengths.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using namespace testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;

SkewHermitian planar_generator(double theta) {
  ComplexMatrix z(2);
  z(0, 1) = -theta;
  z(1, 0) = theta;
  return SkewHermitian::from_matrix(z);
}
}  // namespace

TEST_CASE("curve_length: constant curve has zero length") {
  const ProjectionPoint q = ProjectionPoint::coordinate(3, 1);
  DiscretizedCurve c;
  c.kind = CurveKind::kProjection;
  c.times = {0.0, 0.5, 1.0};
  c.points = {q.matrix(), q.matrix(), q.matrix()};
  CHECK(curve_length(c, 2.0) == 0.0);
  CHECK_THROWS_AS(curve_length(c, 0.3), InvalidInput);
}

TEST_CASE("curve_length: planar projection geodesic matches sqrt(2) theta") {
  const double theta = 0.7;
  const ProjectionPoint q0 = ProjectionPoint::coordinate(2, 1);
  const DiscretizedCurve geo = lab::sample_grass_geodesic(q0, planar_generator(theta), 10000);
  CHECK(std::abs(curve_length(geo, 2.0) - std::sqrt(2.0) * theta) <= 1e-4);
}

TEST_CASE("curve_length: unitary geodesic in the 4-norm") {
  ComplexMatrix xm(2);
  xm(0, 0) = cplx(0.0, 0.5);
  xm(1, 1) = cplx(0.0, -0.3);
  const SkewHermitian x = SkewHermitian::from_matrix(xm);
  const DiscretizedCurve geo =
      lab::unitary_competitor_curve(x, SkewHermitian::zero(2), 0.0, 1000);
  const double expected = std::pow(std::pow(0.5, 4.0) + std::pow(0.3, 4.0), 0.25);
  CHECK(std::abs(curve_length(geo, 4.0) - expected) <= 1e-4);
}

TEST_CASE("curve_length: refinement never decreases the chordal sum") {
  CounterRng rng(61);
  const auto pair = lab::random_projection_pair(5, 2, lab::PairMode::kGeneric, 17);
  const SkewHermitian z = grass_log_bv(pair.first, pair.second).direction;
  const SkewHermitian y = random_skew(rng, 5);
  for (double k : {1.0, 2.0, 4.0}) {
    const double coarse =
        curve_length(lab::competitor_curve(pair.first, z, y, 0.4, 32), k);
    const double fine =
        curve_length(lab::competitor_curve(pair.first, z, y, 0.4, 64), k);
    CHECK(fine >= coarse - 1e-12);
  }
}

TEST_CASE("curve_length: quadratic convergence to the closed-form length") {
  const double theta = 1.1;
  const ProjectionPoint q0 = ProjectionPoint::coordinate(2, 1);
  const SkewHermitian z = planar_generator(theta);
  const double exact = std::sqrt(2.0) * theta;
  const double d32 = exact - curve_length(lab::sample_grass_geodesic(q0, z, 32), 2.0);
  const double d64 = exact - curve_length(lab::sample_grass_geodesic(q0, z, 64), 2.0);
  CHECK(d32 > 0.0);
  CHECK(d64 > 0.0);
  CHECK(d32 / d64 == doctest::Approx(4.0).epsilon(0.15));  // O(m^-2)
}

TEST_CASE("curve_length: independent of the parametrization") {
  const ProjectionPoint q0 = ProjectionPoint::coordinate(2, 1);
  const SkewHermitian z = planar_generator(0.8);
  DiscretizedCurve c = lab::sample_grass_geodesic(q0, z, 16);
  const double uniform_length = curve_length(c, 2.0);
  // squash the grid toward 0; the chordal sum only sees the points
  for (std::size_t j = 0; j < c.times.size(); ++j) {
    const double t = c.times[j];
    c.times[j] = t * t;
  }
  c.times.back() = 1.0;
  CHECK(curve_length(c, 2.0) == uniform_length);
}

TEST_CASE("curve_length: non-increasing in k") {
  CounterRng rng(62);
  const auto pair = lab::random_projection_pair(6, 3, lab::PairMode::kGeneric, 23);
  const SkewHermitian z = grass_log_bv(pair.first, pair.second).direction;
  const DiscretizedCurve c = lab::competitor_curve(pair.first, z, random_skew(rng, 6), 0.3, 64);
  double prev = curve_length(c, 1.0);
  for (double k : {1.5, 2.0, 3.0, 6.0}) {
    const double cur = curve_length(c, k);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("validate_curve: grid and kind invariants") {
  const ProjectionPoint q = ProjectionPoint::coordinate(2, 1);
  DiscretizedCurve c;
  c.kind = CurveKind::kProjection;
  c.times = {0.0, 1.0};
  c.points = {q.matrix(), q.matrix()};
  CHECK_NOTHROW(validate_curve(c));

  DiscretizedCurve bad_grid = c;
  bad_grid.times = {0.0, 0.5};
  CHECK_THROWS_AS(validate_curve(bad_grid), InvalidInput);

  DiscretizedCurve bad_point = c;
  bad_point.points[1](0, 1) = 0.5;  // not a projection any more
  CHECK_THROWS_AS(validate_curve(bad_point), InvalidInput);

  DiscretizedCurve unitary_curve;
  unitary_curve.kind = CurveKind::kUnitary;
  unitary_curve.times = {0.0, 1.0};
  unitary_curve.points = {ComplexMatrix::identity(2), planar_rotation(0.3)};
  CHECK_NOTHROW(validate_curve(unitary_curve));
  unitary_curve.points[1] *= cplx(2.0, 0.0);
  CHECK_THROWS_AS(validate_curve(unitary_curve), InvalidInput);
}

TEST_CASE("jensen_compression_slack: equality and hand-computed cases") {
  // rank-one p with a = p: exact equality
  const ProjectionPoint p1 = ProjectionPoint::coordinate(3, 1);
  for (double r : {1.0, 1.5, 2.0, 3.0})
    CHECK(std::abs(jensen_compression_slack(p1.matrix(), p1.matrix(), r)) <= 1e-12);

  // full projection, a = diag(1,2), r = 2: 2*(1+4) - 9 = 1
  ComplexMatrix full = ComplexMatrix::identity(2);
  ComplexMatrix a(2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  CHECK(jensen_compression_slack(full, a, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

  // a scalar on the range of p: equality for any r
  CounterRng rng(63);
  const ProjectionPoint p = random_projection(rng, 5, 2);
  ComplexMatrix scalar_on_range = p.matrix();
  scalar_on_range *= cplx(0.7, 0.0);
  for (double r : {1.5, 2.0, 3.0})
    CHECK(std::abs(jensen_compression_slack(p.matrix(), scalar_on_range, r)) <= 1e-10);

  CHECK_THROWS_AS(jensen_compression_slack(p.matrix(), a, 0.5), InvalidInput);
  // non-PSD input rejected
  ComplexMatrix indef(2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  CHECK_THROWS_AS(jensen_compression_slack(full, indef, 2.0), InvalidInput);
}

TEST_CASE("jensen_compression_slack: random sweep stays nonnegative") {
  CounterRng rng(64);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const ComplexMatrix a = random_psd_unit_norm(rng, n);
    const int rank = 1 + static_cast<int>(rng.next_u64() % n);
    const UnitaryMatrix u = random_unitary(rng, n);
    ComplexMatrix d(n);
    for (int i = 0; i < rank; ++i) d(i, i) = 1.0;
    const ComplexMatrix p = u.matrix() * d * u.matrix().adjoint();
    const double r = 1.5 + (trial % 3);
    CHECK(jensen_compression_slack(p, a, r) >= -1e-10);
  }
}

TEST_CASE("jensen_pinch_slack: commuting equality and hand computation") {
  // diagonal a, coordinate partition: commuting, slack 0
  ComplexMatrix a(3);
  a(0, 0) = 0.3;
  a(1, 1) = 1.1;
  a(2, 2) = 2.4;
  std::vector<ComplexMatrix> parts;
  for (int i = 0; i < 3; ++i) {
    ComplexMatrix p(3);
    p(i, i) = 1.0;
    parts.push_back(p);
  }
  for (double r : {1.5, 2.0, 3.0})
    CHECK(std::abs(jensen_pinch_slack(a, parts, r)) <= 1e-10);

  // [[2,1],[1,2]] pinched by coordinates at r=2: 10 - 8 = 2
  ComplexMatrix b(2);
  b(0, 0) = 2.0;
  b(0, 1) = 1.0;
  b(1, 0) = 1.0;
  b(1, 1) = 2.0;
  std::vector<ComplexMatrix> coords;
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix p(2);
    p(i, i) = 1.0;
    coords.push_back(p);
  }
  CHECK(jensen_pinch_slack(b, coords, 2.0) == doctest::Approx(2.0).epsilon(1e-12));

  // partition that does not resolve the identity
  CHECK_THROWS_AS(jensen_pinch_slack(b, {coords[0]}, 2.0), InvalidInput);
  // overlapping parts
  CHECK_THROWS_AS(jensen_pinch_slack(b, {coords[0], coords[0]}, 2.0), InvalidInput);
}

TEST_CASE("jensen_pinch_slack: random sweep stays nonnegative") {
  CounterRng rng(65);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const ComplexMatrix a = random_psd_unit_norm(rng, n);
    const UnitaryMatrix u = random_unitary(rng, n);
    std::vector<ComplexMatrix> parts;
    int offset = 0;
    while (offset < n) {
      const int block =
          1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - offset));
      ComplexMatrix d(n);
      for (int i = 0; i < block; ++i) d(offset + i, offset + i) = 1.0;
      parts.push_back(u.matrix() * d * u.matrix().adjoint());
      offset += block;
    }
    const double r = 1.5 + (trial % 3);
    CHECK(jensen_pinch_slack(a, parts, r) >= -1e-10);
  }
}

TEST_CASE("jensen slacks are invariant under unitary conjugation") {
  CounterRng rng(66);
  const int n = 5;
  const ComplexMatrix a = random_psd_unit_norm(rng, n);
  const ProjectionPoint p = random_projection(rng, n, 2);
  std::vector<ComplexMatrix> parts{p.matrix(), p.complement_matrix()};
  const UnitaryMatrix u = random_unitary(rng, n);

  auto conj = [&](const ComplexMatrix& m) {
    return hermitian_part(u.matrix() * m * u.matrix().adjoint());
  };
  for (double r : {1.5, 2.0, 3.0}) {
    const double base_c = jensen_compression_slack(p.matrix(), a, r);
    const double moved_c = jensen_compression_slack(conj(p.matrix()), conj(a), r);
    CHECK(std::abs(base_c - moved_c) <= 1e-10);
    const double base_p = jensen_pinch_slack(a, parts, r);
    const double moved_p =
        jensen_pinch_slack(conj(a), {conj(parts[0]), conj(parts[1])}, r);
    CHECK(std::abs(base_p - moved_p) <= 1e-10);
  }
}

TEST_CASE("minkowski_slack: equality and positivity cases") {
  // single function: exact equality
  std::vector<std::vector<double>> one = {{0.2, 0.4, 0.9, 0.1}};
  CHECK(std::abs(minkowski_slack(one, 2.0)) <= 1e-14);

  // two equal constants: proportional, equality
  std::vector<std::vector<double>> constants = {std::vector<double>(11, 1.0),
                                                std::vector<double>(11, 1.0)};
  CHECK(std::abs(minkowski_slack(constants, 2.0)) <= 1e-12);

  // f1 = t, f2 = 1 - t on a 1000-point grid: strictly positive
  const int grid = 1001;
  std::vector<double> f1(grid), f2(grid);
  for (int j = 0; j < grid; ++j) {
    const double t = static_cast<double>(j) / (grid - 1);
    f1[j] = t;
    f2[j] = 1.0 - t;
  }
  const double slack = minkowski_slack({f1, f2}, 2.0);
  CHECK(slack > 1e-3);

  std::vector<std::vector<double>> negative = {{0.5, -0.1, 0.3}};
  CHECK_THROWS_AS(minkowski_slack(negative, 2.0), InvalidInput);
  CHECK_THROWS_AS(minkowski_slack(one, 0.9), InvalidInput);
}
