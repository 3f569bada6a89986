#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "grassgeo/errors.hpp"
#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/spectral.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using namespace testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;

ComplexMatrix reconstruct(const EigenSystem& es) {
  const int n = es.vectors.dim();
  const ComplexMatrix& v = es.vectors.matrix();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += v(i, k) * es.values[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  return out;
}

double unitarity_drift(const ComplexMatrix& u) {
  const int n = u.dim();
  ComplexMatrix g(n);
  matmul_adjoint_lhs(u, u, g);
  for (int i = 0; i < n; ++i) g(i, i) -= 1.0;
  return g.max_abs();
}
}  // namespace

TEST_CASE("herm_eig: diagonal input sorts ascending with permutation vectors") {
  ComplexMatrix a(2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  const EigenSystem es = herm_eig(a);
  CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(es.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  const ComplexMatrix& v = es.vectors.matrix();
  CHECK(std::abs(v(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(v(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(v(0, 0)) < 1e-12);
  CHECK(std::abs(v(1, 1)) < 1e-12);
}

TEST_CASE("herm_eig: symmetric involution") {
  ComplexMatrix a(2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  const EigenSystem es = herm_eig(a);
  CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  const ComplexMatrix& v = es.vectors.matrix();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(v(i, j)) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(max_abs_diff(reconstruct(es), a) < 1e-14);
}

TEST_CASE("herm_eig: random hermitian reconstruction within 1e-10") {
  CounterRng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const ComplexMatrix a = random_hermitian(rng, n);
    const EigenSystem es = herm_eig(a);
    CHECK(max_abs_diff(reconstruct(es), a) <= 1e-10 * operator_norm(a));
    CHECK(unitarity_drift(es.vectors.matrix()) < 1e-13);
    for (std::size_t i = 1; i < es.values.size(); ++i)
      CHECK(es.values[i] >= es.values[i - 1]);
  }
}

TEST_CASE("herm_eig: rejects non-hermitian input") {
  CounterRng rng(7);
  const ComplexMatrix g = gaussian(rng, 4);
  CHECK_THROWS_AS(herm_eig(g), InvalidInput);
}

TEST_CASE("commuting_herm_eig: joint diagonalization of a functional pair") {
  CounterRng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u64() % 6);
    const ComplexMatrix base = random_hermitian(rng, n);
    const EigenSystem es = herm_eig(base);
    const ComplexMatrix h = apply_spectral(es, [](double l) { return cplx(std::cos(l), 0.0); });
    const ComplexMatrix s = apply_spectral(es, [](double l) { return cplx(std::sin(l), 0.0); });
    const CommutingEigenSystem joint = commuting_herm_eig(h, s);
    const ComplexMatrix& v = joint.vectors.matrix();
    CHECK(unitarity_drift(v) < 1e-12);
    ComplexMatrix h_rec(n), s_rec(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx ah = 0.0, as = 0.0;
        for (int k = 0; k < n; ++k) {
          ah += v(i, k) * joint.first_values[k] * std::conj(v(j, k));
          as += v(i, k) * joint.second_values[k] * std::conj(v(j, k));
        }
        h_rec(i, j) = ah;
        s_rec(i, j) = as;
      }
    CHECK(max_abs_diff(h_rec, h) < 1e-12);
    CHECK(max_abs_diff(s_rec, s) < 1e-12);
  }
}

TEST_CASE("polar_unitary: scalar cases") {
  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(max_abs_diff(polar_unitary(id).matrix(), id) < 1e-14);
  ComplexMatrix two = id;
  two *= cplx(2.0, 0.0);
  CHECK(max_abs_diff(polar_unitary(two).matrix(), id) < 1e-14);
}

TEST_CASE("polar_unitary: recomposition w |g| = g") {
  CounterRng rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix g = gaussian(rng, 6);
    const UnitaryMatrix w = polar_unitary(g);
    CHECK(unitarity_drift(w.matrix()) < 1e-13);
    ComplexMatrix gram(6);
    matmul_adjoint_lhs(g, g, gram);
    const ComplexMatrix mod = apply_spectral(
        herm_eig(gram), [](double l) { return cplx(std::sqrt(std::max(l, 0.0)), 0.0); });
    CHECK(max_abs_diff(w.matrix() * mod, g) <= 1e-10 * operator_norm(g));
  }
}

TEST_CASE("polar_unitary: rejects singular input") {
  ComplexMatrix g(3);
  g(0, 0) = 1.0;
  g(1, 1) = 1.0;  // third column zero
  CHECK_THROWS_AS(polar_unitary(g), SingularInput);
}

TEST_CASE("polar_unitary: recovers u from u h with positive-definite h") {
  CounterRng rng(303);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 5;
    const UnitaryMatrix u = random_unitary(rng, n);
    const ComplexMatrix g = gaussian(rng, n);
    ComplexMatrix h(n);
    matmul_adjoint_lhs(g, g, h);
    for (int i = 0; i < n; ++i) h(i, i) += 0.5;  // positive definite
    const ComplexMatrix gh = u.matrix() * hermitian_part(h);
    CHECK(max_abs_diff(polar_unitary(gh).matrix(), u.matrix()) < 1e-11);
  }
}

TEST_CASE("expm_skew: zero, planar rotation, diagonal") {
  CHECK(max_abs_diff(expm_skew(SkewHermitian::zero(3)).matrix(), ComplexMatrix::identity(3)) <
        1e-15);

  const double theta = kPi / 3.0;
  ComplexMatrix x(2);
  x(0, 1) = -theta;
  x(1, 0) = theta;
  CHECK(max_abs_diff(expm_skew(SkewHermitian::from_matrix(x)).matrix(),
                     planar_rotation(theta)) < 1e-14);

  ComplexMatrix d(2);
  d(0, 0) = cplx(0.0, kPi);
  const ComplexMatrix e = expm_skew(SkewHermitian::from_matrix(d)).matrix();
  CHECK(std::abs(e(0, 0) - cplx(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(e(1, 1) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(e(0, 1)) < 1e-14);
}

TEST_CASE("logm_unitary: identity, diagonal branch, minus identity") {
  CHECK(logm_unitary(UnitaryMatrix::identity(3)).matrix().max_abs() < 1e-14);

  ComplexMatrix u(2);
  u(0, 0) = cplx(std::cos(0.8), std::sin(0.8));
  u(1, 1) = 1.0;
  const SkewHermitian z = logm_unitary(UnitaryMatrix::from_matrix(u));
  CHECK(std::abs(z.matrix()(0, 0) - cplx(0.0, 0.8)) < 1e-14);
  CHECK(std::abs(z.matrix()(1, 1)) < 1e-14);

  ComplexMatrix mi = ComplexMatrix::identity(2);
  mi *= cplx(-1.0, 0.0);
  const SkewHermitian zm = logm_unitary(UnitaryMatrix::from_matrix(mi));
  CHECK(std::abs(zm.matrix()(0, 0) - cplx(0.0, kPi)) < 1e-12);
  CHECK(std::abs(zm.matrix()(1, 1) - cplx(0.0, kPi)) < 1e-12);
  CHECK(schatten_norm(zm.matrix(), 2.0) ==
        doctest::Approx(kPi * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(max_abs_diff(expm_skew(zm).matrix(), mi) < 1e-9);
}

TEST_CASE("logm_unitary tolerates the full unitarity drift budget") {
  CounterRng rng(969);
  const UnitaryMatrix clean = random_unitary(rng, 4);
  ComplexMatrix dirty = clean.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) dirty(i, j) += 3e-11 * rng.next_complex_gaussian();
  const SkewHermitian z = logm_unitary(UnitaryMatrix::trusted(dirty));
  CHECK(max_abs_diff(expm_skew(z).matrix(), dirty) <= 1e-9);
}

TEST_CASE("exp/log roundtrip below the pi radius") {
  CounterRng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const double target = (0.05 + 0.85 * rng.next_uniform()) * kPi;  // <= 0.9 pi
    const SkewHermitian z = random_skew_with_norm(rng, n, target);
    const SkewHermitian back = logm_unitary(expm_skew(z));
    CHECK(max_abs_diff(back.matrix(), z.matrix()) <= 1e-9);
  }
}

TEST_CASE("arcsine identity for the operator norm of e^x - 1") {
  CounterRng rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    const double target = (0.02 + 0.98 * rng.next_uniform()) * kPi;
    const SkewHermitian x = random_skew_with_norm(rng, n, target);
    const ComplexMatrix diff = expm_skew(x).matrix() - ComplexMatrix::identity(n);
    const double lhs = schatten_norm(diff, std::numeric_limits<double>::infinity());
    const double rhs = 2.0 * std::sin(target / 2.0);
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("log branch non-uniqueness at the pi boundary") {
  ComplexMatrix xm(2), ym(2);
  xm(0, 0) = cplx(0.0, kPi);
  xm(1, 1) = cplx(0.0, -kPi);
  ym(0, 0) = cplx(0.0, kPi);
  ym(1, 1) = cplx(0.0, kPi);
  const SkewHermitian x = SkewHermitian::from_matrix(xm);
  const SkewHermitian y = SkewHermitian::from_matrix(ym);
  CHECK(max_abs_diff(expm_skew(x).matrix(), expm_skew(y).matrix()) < 1e-14);
  CHECK(schatten_norm(xm, 2.0) == doctest::Approx(kPi * std::sqrt(2.0)));
  CHECK(schatten_norm(ym, 2.0) == doctest::Approx(kPi * std::sqrt(2.0)));
}

TEST_CASE("schatten_norm: explicit singular values") {
  for (int n : {2, 3, 7}) {
    CHECK(schatten_norm(ComplexMatrix::identity(n), 2.0) ==
          doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-14));
  }
  ComplexMatrix d(2);
  d(0, 0) = 3.0;
  d(1, 1) = 4.0;
  CHECK(schatten_norm(d, std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
  CHECK(schatten_norm(d, 2.0) == doctest::Approx(5.0));
}

TEST_CASE("schatten_norm: all exponents agree on rank one") {
  CounterRng rng(606);
  ComplexMatrix a(4);
  std::vector<cplx> u(4), v(4);
  for (int i = 0; i < 4; ++i) {
    u[i] = rng.next_complex_gaussian();
    v[i] = rng.next_complex_gaussian();
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = u[i] * std::conj(v[j]);
  const double ref = schatten_norm(a, std::numeric_limits<double>::infinity());
  for (double k : {1.0, 1.5, 2.0, 3.0, 7.0})
    CHECK(schatten_norm(a, k) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("schatten_norm: non-increasing in k, rejects k < 1") {
  CounterRng rng(707);
  const ComplexMatrix a = gaussian(rng, 5);
  double prev = schatten_norm(a, 1.0);
  for (double k : {1.5, 2.0, 3.0, 6.0, 12.0}) {
    const double cur = schatten_norm(a, k);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  CHECK(schatten_norm(a, std::numeric_limits<double>::infinity()) <= prev + 1e-12);
  CHECK_THROWS_AS(schatten_norm(a, 0.5), InvalidInput);
}

TEST_CASE("trace_inner: identities and the two-path norm check") {
  const int n = 4;
  const ComplexMatrix id = ComplexMatrix::identity(n);
  CHECK(std::abs(trace_inner(id, id) - cplx(n, 0.0)) < 1e-14);

  ComplexMatrix e12(3);
  e12(0, 1) = 1.0;
  CHECK(std::abs(trace_inner(e12, e12) - cplx(1.0, 0.0)) < 1e-15);

  CounterRng rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = gaussian(rng, 6);
    const double norm2 = schatten_norm(a, 2.0);
    CHECK(std::abs(trace_inner(a, a).real() - norm2 * norm2) <= 1e-12 * norm2 * norm2);
    CHECK(std::abs(trace_inner(a, a).imag()) <= 1e-12 * norm2 * norm2);
    const ComplexMatrix b = gaussian(rng, 6);
    CHECK(std::abs(trace_inner(a, b) - std::conj(trace_inner(b, a))) < 1e-12);
  }
  CHECK_THROWS_AS(trace_inner(ComplexMatrix(2), ComplexMatrix(3)), InvalidInput);
}

TEST_CASE("SkewHermitian construction validates and normalizes") {
  CounterRng rng(909);
  const ComplexMatrix g = gaussian(rng, 4);
  CHECK_THROWS_AS(SkewHermitian::from_matrix(g), InvalidInput);
  const SkewHermitian s = SkewHermitian::skew_projection(g);
  CHECK(max_abs_diff(s.matrix(), cplx(-1.0, 0.0) * s.matrix().adjoint()) == 0.0);
}

TEST_CASE("UnitaryMatrix re-orthonormalizes drifted input") {
  CounterRng rng(111);
  const UnitaryMatrix u = random_unitary(rng, 4);
  ComplexMatrix drifted = u.matrix();
  drifted(0, 0) += 1e-6;  // beyond the 1e-10 drift budget
  const UnitaryMatrix fixed = UnitaryMatrix::from_matrix(drifted);
  CHECK(unitarity_drift(fixed.matrix()) < 1e-13);
  CHECK(max_abs_diff(fixed.matrix(), u.matrix()) < 1e-5);

  CHECK_THROWS_AS(UnitaryMatrix::from_matrix(ComplexMatrix(3)), InvalidInput);
}

TEST_CASE("ProjectionPoint validates hermitian idempotents of matching rank") {
  CounterRng rng(222);
  const ProjectionPoint p = random_projection(rng, 5, 2);
  CHECK(p.rank() == 2);
  CHECK_NOTHROW(ProjectionPoint::from_matrix(p.matrix()));
  CHECK_THROWS_AS(ProjectionPoint::from_matrix(p.matrix(), 3), InvalidInput);
  CHECK_THROWS_AS(ProjectionPoint::from_matrix(gaussian(rng, 5), 2), InvalidInput);
  CHECK_THROWS_AS(ProjectionPoint::coordinate(4, 0), InvalidInput);
  CHECK_THROWS_AS(ProjectionPoint::coordinate(4, 4), InvalidInput);
}

TEST_CASE("apply_spectral clusters degenerate eigenvalues") {
  ComplexMatrix a(2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0 + 1e-12;
  const ComplexMatrix e =
      apply_spectral(herm_eig(a), [](double l) { return cplx(std::exp(l), 0.0); });
  CHECK(std::abs(e(0, 0).real() - std::exp(1.0)) < 1e-11);
  CHECK(std::abs(e(1, 1).real() - std::exp(1.0)) < 1e-11);
}
