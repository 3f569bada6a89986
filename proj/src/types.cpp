#include "grassgeo/types.hpp"

#include <cmath>

#include "grassgeo/errors.hpp"
#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/spectral.hpp"

namespace grassgeo {

namespace {

// Decides ||dev|| <= tol * scale_norm (operator norms) using entrywise
// bounds first; dev_herm must produce a hermitian matrix whose operator norm
// equals ||dev|| when the gray zone forces an exact evaluation.
bool within_tolerance(const ComplexMatrix& dev, double tol, double scale_norm_upper,
                      double scale_norm_lower, const ComplexMatrix* dev_herm) {
  const double dev_max = dev.max_abs();
  const int n = dev.dim();
  if (dev_max * n <= tol * scale_norm_lower) return true;   // accept fast
  if (dev_max > tol * scale_norm_upper) return false;       // reject fast
  const double dev_norm =
      dev_herm ? hermitian_operator_norm(*dev_herm) : operator_norm(dev);
  return dev_norm <= tol * scale_norm_upper;
}

}  // namespace

SkewHermitian SkewHermitian::from_matrix(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix dev(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dev(i, j) = m(i, j) + std::conj(m(j, i));
  // ||m + m^*|| <= 1e-12 ||m||; entrywise fast paths, exact norms otherwise.
  const double m_max = m.max_abs();
  const double dev_max = dev.max_abs();
  constexpr double tol = 1e-12;
  bool ok;
  if (m_max == 0.0) {
    ok = true;  // zero matrix
  } else if (dev_max * n <= tol * m_max) {
    ok = true;
  } else if (dev_max > tol * n * m_max) {
    ok = false;
  } else {
    ok = hermitian_operator_norm(dev) <= tol * operator_norm(m);
  }
  if (!ok) throw InvalidInput("SkewHermitian: input is not anti-hermitian");
  return skew_projection(m);
}

UnitaryMatrix UnitaryMatrix::from_matrix(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix g(n);
  matmul_adjoint_lhs(m, m, g);
  for (int i = 0; i < n; ++i) g(i, i) -= 1.0;
  constexpr double tol = 1e-10;
  const double drift_max = g.max_abs();
  if (drift_max * n <= tol) return UnitaryMatrix(m);
  if (drift_max <= tol && hermitian_operator_norm(g) <= tol) return UnitaryMatrix(m);
  // drift above tolerance: re-orthonormalize via polar projection
  try {
    return polar_unitary(m);
  } catch (const SingularInput&) {
    throw InvalidInput("UnitaryMatrix: matrix is too far from unitary");
  }
}

ProjectionPoint ProjectionPoint::from_matrix(const ComplexMatrix& m) {
  const double tr = m.trace().real();
  return from_matrix(m, static_cast<int>(std::lround(tr)));
}

ProjectionPoint ProjectionPoint::from_matrix(const ComplexMatrix& m, int rank) {
  const int n = m.dim();
  if (rank <= 0 || rank >= n)
    throw InvalidInput("ProjectionPoint: rank must satisfy 0 < rank < dim");
  constexpr double tol = 1e-10;

  ComplexMatrix herm_dev(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      herm_dev(i, j) = cplx(0.0, -1.0) * (m(i, j) - std::conj(m(j, i)));
  if (!within_tolerance(herm_dev, tol, 1.0, 1.0, &herm_dev))
    throw InvalidInput("ProjectionPoint: matrix is not hermitian");

  ComplexMatrix idem = m * m - m;
  if (!within_tolerance(idem, tol, 1.0, 1.0, &idem))
    throw InvalidInput("ProjectionPoint: matrix is not idempotent");

  const cplx tr = m.trace();
  if (std::abs(tr.real() - rank) > 1e-8 || std::abs(tr.imag()) > 1e-8)
    throw InvalidInput("ProjectionPoint: trace does not match rank");

  return ProjectionPoint(m, rank);
}

ProjectionPoint ProjectionPoint::coordinate(int dim, int rank) {
  if (rank <= 0 || rank >= dim)
    throw InvalidInput("ProjectionPoint: rank must satisfy 0 < rank < dim");
  ComplexMatrix m(dim);
  for (int i = 0; i < rank; ++i) m(i, i) = 1.0;
  return ProjectionPoint(std::move(m), rank);
}

ComplexMatrix ProjectionPoint::complement_matrix() const {
  ComplexMatrix c = m_;
  c *= cplx(-1.0, 0.0);
  for (int i = 0; i < c.dim(); ++i) c(i, i) += 1.0;
  return c;
}

ComplexMatrix ProjectionPoint::symmetry() const {
  ComplexMatrix s = m_;
  s *= cplx(2.0, 0.0);
  for (int i = 0; i < s.dim(); ++i) s(i, i) -= 1.0;
  return s;
}

}  // namespace grassgeo
