#ifndef GRASSGEO_TYPES_HPP
#define GRASSGEO_TYPES_HPP

#include <utility>

#include "grassgeo/complex_matrix.hpp"

namespace grassgeo {

/// Anti-hermitian matrix; Lie-algebra element and geodesic direction.
///
/// Construction always normalizes the stored matrix to exactly (m - m^*)/2,
/// so the invariant m = -m^* holds bitwise.
class SkewHermitian {
public:
  /// Requires the input to already be skew within 1e-12 (operator norm,
  /// relative); throws InvalidInput otherwise.
  static SkewHermitian from_matrix(const ComplexMatrix& m);

  /// Projects an arbitrary matrix onto its skew part (m - m^*)/2.
  static SkewHermitian skew_projection(const ComplexMatrix& m) {
    return SkewHermitian(skew_part(m));
  }

  static SkewHermitian zero(int dim) { return SkewHermitian(ComplexMatrix(dim)); }

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

  SkewHermitian scaled(double t) const {
    ComplexMatrix m = m_;
    m *= cplx(t, 0.0);
    return SkewHermitian(std::move(m));
  }

  friend SkewHermitian operator+(const SkewHermitian& a, const SkewHermitian& b) {
    return SkewHermitian(a.m_ + b.m_);
  }
  friend SkewHermitian operator-(const SkewHermitian& a, const SkewHermitian& b) {
    return SkewHermitian(a.m_ - b.m_);
  }

private:
  explicit SkewHermitian(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Unitary matrix; group element of the finite model of U_2.
class UnitaryMatrix {
public:
  /// Validates ||m^* m - 1||_inf <= 1e-10; when the drift exceeds that the
  /// matrix is re-orthonormalized via polar projection (InvalidInput if it
  /// is not even invertible).
  static UnitaryMatrix from_matrix(const ComplexMatrix& m);

  /// For matrices that are unitary by construction (exponentials, polar
  /// factors, eigenvector frames). No validation.
  static UnitaryMatrix trusted(ComplexMatrix m) { return UnitaryMatrix(std::move(m)); }

  static UnitaryMatrix identity(int dim) {
    return UnitaryMatrix(ComplexMatrix::identity(dim));
  }

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

  /// Product of unitaries, validated through the fast drift check.
  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix::from_matrix(a.m_ * b.m_);
  }

private:
  explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Hermitian idempotent of known rank; a point of the Grassmannian.
///
/// Models a polarization with infinite rank and corank, hence 0 < rank < dim.
class ProjectionPoint {
public:
  /// Validates hermiticity and idempotency (1e-10, operator norm), the trace
  /// against the rank (1e-8) and 0 < rank < dim.
  static ProjectionPoint from_matrix(const ComplexMatrix& m, int rank);
  /// Same, with the rank inferred from the trace.
  static ProjectionPoint from_matrix(const ComplexMatrix& m);

  static ProjectionPoint trusted(ComplexMatrix m, int rank) {
    return ProjectionPoint(std::move(m), rank);
  }

  /// diag(1_rank, 0): the reference polarization in coordinates.
  static ProjectionPoint coordinate(int dim, int rank);

  const ComplexMatrix& matrix() const { return m_; }
  int rank() const { return rank_; }
  int dim() const { return m_.dim(); }

  /// 1 - p.
  ComplexMatrix complement_matrix() const;
  /// The symmetry 2p - 1.
  ComplexMatrix symmetry() const;

private:
  ProjectionPoint(ComplexMatrix m, int rank) : m_(std::move(m)), rank_(rank) {}
  ComplexMatrix m_;
  int rank_;
};

}  // namespace grassgeo

#endif
