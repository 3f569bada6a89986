#ifndef GRASSGEO_COMPLEX_MATRIX_HPP
#define GRASSGEO_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "grassgeo/errors.hpp"

namespace grassgeo {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major storage.
///
/// The ambient arithmetic object of the library: all entries must stay
/// finite and dim >= 1.
class ComplexMatrix {
public:
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::vector<cplx> entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return dim_; }

  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  ComplexMatrix adjoint() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scalar);

  bool all_finite() const;

  /// Largest entry modulus; cheap bound used by validation fast paths.
  double max_abs() const;
  /// Frobenius norm, computed entrywise.
  double frobenius() const;

private:
  int dim_;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);

/// c = a * b without allocating; all three must share the dimension.
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
/// c = a * b^*.
void matmul_adjoint_rhs(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);
/// c = a^* * b.
void matmul_adjoint_lhs(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);

/// (m + m^*)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// (m - m^*)/2.
ComplexMatrix skew_part(const ComplexMatrix& m);

/// Dense rectangular complex matrix, column-accessible. Used for stacked
/// projector systems and orthonormal column bases; the square JSON-facing
/// type stays ComplexMatrix.
class RectMatrix {
public:
  RectMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(j) * rows_ + i]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(j) * rows_ + i];
  }

  cplx* col(int j) { return a_.data() + static_cast<std::size_t>(j) * rows_; }
  const cplx* col(int j) const { return a_.data() + static_cast<std::size_t>(j) * rows_; }

private:
  int rows_;
  int cols_;
  std::vector<cplx> a_;  // column-major so columns are contiguous
};

}  // namespace grassgeo

#endif
