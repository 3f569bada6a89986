#include "grassgeo/complex_matrix.hpp"

#include <cmath>
#include <utility>

namespace grassgeo {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidInput("ComplexMatrix: dim must be >= 1");
  a_.assign(static_cast<std::size_t>(dim) * dim, cplx(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
  if (dim < 1) throw InvalidInput("ComplexMatrix: dim must be >= 1");
  if (a_.size() != static_cast<std::size_t>(dim) * dim)
    throw InvalidInput("ComplexMatrix: entry count does not match dim*dim");
  if (!all_finite()) throw InvalidInput("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw InvalidInput("matrix addition: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw InvalidInput("matrix subtraction: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (auto& x : a_) x *= scalar;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& x : a_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  const int n = a.dim();
  if (b.dim() != n || c.dim() != n) throw InvalidInput("matmul: dimension mismatch");
  const cplx* pa = a.data();
  const cplx* pb = b.data();
  cplx* pc = c.data();
  for (int i = 0; i < n; ++i) {
    cplx* ci = pc + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    for (int k = 0; k < n; ++k) {
      const cplx aik = pa[static_cast<std::size_t>(i) * n + k];
      if (aik == cplx(0.0, 0.0)) continue;
      const cplx* bk = pb + static_cast<std::size_t>(k) * n;
      for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void matmul_adjoint_rhs(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  const int n = a.dim();
  if (b.dim() != n || c.dim() != n) throw InvalidInput("matmul: dimension mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * std::conj(b(j, k));
      c(i, j) = s;
    }
}

void matmul_adjoint_lhs(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  const int n = a.dim();
  if (b.dim() != n || c.dim() != n) throw InvalidInput("matmul: dimension mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(a(k, i)) * b(k, j);
      c(i, j) = s;
    }
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  ComplexMatrix c(lhs.dim());
  matmul(lhs, rhs, c);
  return c;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

ComplexMatrix skew_part(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (m(i, j) - std::conj(m(j, i)));
  return s;
}

RectMatrix::RectMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("RectMatrix: negative shape");
  a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx(0.0, 0.0));
}

}  // namespace grassgeo
