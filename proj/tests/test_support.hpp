#ifndef GRASSGEO_TEST_SUPPORT_HPP
#define GRASSGEO_TEST_SUPPORT_HPP

#include <cmath>

#include "grassgeo/complex_matrix.hpp"
#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/rng.hpp"
#include "grassgeo/types.hpp"

namespace testsupport {

using grassgeo::ComplexMatrix;
using grassgeo::CounterRng;
using grassgeo::cplx;
using grassgeo::ProjectionPoint;
using grassgeo::SkewHermitian;
using grassgeo::UnitaryMatrix;

inline ComplexMatrix gaussian(CounterRng& rng, int n) {
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
  return g;
}

inline ComplexMatrix random_hermitian(CounterRng& rng, int n) {
  return grassgeo::hermitian_part(gaussian(rng, n));
}

inline SkewHermitian random_skew(CounterRng& rng, int n) {
  return SkewHermitian::skew_projection(gaussian(rng, n));
}

inline SkewHermitian random_skew_with_norm(CounterRng& rng, int n, double norm_inf) {
  SkewHermitian x = random_skew(rng, n);
  const double cur = grassgeo::skew_operator_norm(x);
  return x.scaled(norm_inf / cur);
}

inline UnitaryMatrix random_unitary(CounterRng& rng, int n) {
  return grassgeo::polar_unitary(gaussian(rng, n));
}

inline ProjectionPoint random_projection(CounterRng& rng, int n, int rank) {
  const UnitaryMatrix u = random_unitary(rng, n);
  ComplexMatrix d(n);
  for (int i = 0; i < rank; ++i) d(i, i) = 1.0;
  ComplexMatrix m = u.matrix() * d * u.matrix().adjoint();
  return ProjectionPoint::trusted(grassgeo::hermitian_part(m), rank);
}

inline ComplexMatrix random_psd_unit_norm(CounterRng& rng, int n) {
  const ComplexMatrix g = gaussian(rng, n);
  ComplexMatrix a(n);
  grassgeo::matmul_adjoint_lhs(g, g, a);
  const double s = grassgeo::hermitian_operator_norm(a);
  if (s > 0.0) a *= cplx(1.0 / s, 0.0);
  return a;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

inline ComplexMatrix planar_rotation(double theta) {
  ComplexMatrix r(2);
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  return r;
}

/// The rank-one projection at principal angle theta from diag(1, 0).
inline ProjectionPoint angle_projection(double theta) {
  const ComplexMatrix r = planar_rotation(theta);
  ComplexMatrix p(2);
  p(0, 0) = 1.0;
  ComplexMatrix m = r * p * r.adjoint();
  return ProjectionPoint::from_matrix(grassgeo::hermitian_part(m), 1);
}

}  // namespace testsupport

#endif
