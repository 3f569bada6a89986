#include "grassgeo/matrix_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grassgeo/errors.hpp"

namespace grassgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reused scratch space for the allocation-free eigenvalue paths.
struct EigWorkspace {
  std::vector<cplx> a;
  std::vector<cplx> v;
  std::vector<double> vals;
  std::vector<double> sorted;
  std::vector<int> idx;
  std::vector<cplx> f;
};
thread_local EigWorkspace tl_ws;

// Eigenvalues (unsorted) of the gram matrix a^* a into ws.vals.
void gram_eigenvalues(const ComplexMatrix& a, EigWorkspace& ws) {
  const int n = a.dim();
  ws.a.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += std::conj(a(k, i)) * a(k, j);
      ws.a[static_cast<std::size_t>(i) * n + j] = acc;
    }
  ws.vals.resize(n);
  detail::jacobi_hermitian_raw(n, ws.a.data(), nullptr, ws.vals.data());
}

}  // namespace

double operator_norm(const ComplexMatrix& a) {
  EigWorkspace& ws = tl_ws;
  gram_eigenvalues(a, ws);
  double top = 0.0;
  for (double v : ws.vals) top = std::max(top, v);
  return std::sqrt(std::max(top, 0.0));
}

double hermitian_operator_norm(const ComplexMatrix& a) {
  const int n = a.dim();
  EigWorkspace& ws = tl_ws;
  ws.a.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ws.a[static_cast<std::size_t>(i) * n + j] = 0.5 * (a(i, j) + std::conj(a(j, i)));
  ws.vals.resize(n);
  detail::jacobi_hermitian_raw(n, ws.a.data(), nullptr, ws.vals.data());
  double top = 0.0;
  for (double v : ws.vals) top = std::max(top, std::abs(v));
  return top;
}

double skew_operator_norm(const SkewHermitian& x) {
  const int n = x.dim();
  ComplexMatrix h(n);
  const ComplexMatrix& m = x.matrix();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = cplx(0.0, -1.0) * m(i, j);
  return hermitian_operator_norm(h);
}

UnitaryMatrix polar_unitary(const ComplexMatrix& g) {
  const int n = g.dim();
  EigWorkspace& pre_ws = tl_ws;
  gram_eigenvalues(g, pre_ws);
  double lam_min = pre_ws.vals.front(), lam_max = pre_ws.vals.front();
  for (double v : pre_ws.vals) {
    lam_min = std::min(lam_min, v);
    lam_max = std::max(lam_max, v);
  }
  const double smax = std::sqrt(std::max(lam_max, 0.0));
  const double smin = std::sqrt(std::max(lam_min, 0.0));
  if (smax == 0.0 || smin <= 1e-12 * smax)
    throw SingularInput("polar_unitary: smallest singular value below 1e-12 * ||g||");

  // Newton iteration X <- (g X + (g X)^{-*})/2 with determinant scaling,
  // quadratically convergent for invertible input.
  ComplexMatrix x = g;
  bool scaling = true;
  double prev_delta = std::numeric_limits<double>::infinity();
  ComplexMatrix next(n);
  for (int iter = 0; iter < 100; ++iter) {
    double logdet = 0.0;
    const ComplexMatrix inv = detail::lu_inverse(x, &logdet);
    const double gamma = scaling ? std::exp(-logdet / n) : 1.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        next(i, j) = 0.5 * (gamma * x(i, j) + std::conj(inv(j, i)) / gamma);
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        diff += std::norm(next(i, j) - x(i, j));
        scale += std::norm(next(i, j));
      }
    x = next;
    const double delta = std::sqrt(diff / std::max(scale, 1e-300));
    if (delta < 1e-2) scaling = false;
    if (delta <= 1e-14 || (delta * delta <= 1e-14 && delta >= prev_delta)) {
      return UnitaryMatrix::trusted(std::move(x));
    }
    prev_delta = delta;
  }
  throw NumericalFailure("polar_unitary: Newton iteration did not converge");
}

namespace detail {

void expm_skew_into(const ComplexMatrix& skew, ComplexMatrix& out) {
  const int n = skew.dim();
  if (out.dim() != n) throw InvalidInput("expm_skew_into: dimension mismatch");
  EigWorkspace& ws = tl_ws;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  ws.a.resize(nn);
  ws.v.assign(nn, cplx(0.0, 0.0));
  const cplx* m = skew.data();
  for (std::size_t k = 0; k < nn; ++k) ws.a[k] = cplx(m[k].imag(), -m[k].real());  // -i m
  for (int i = 0; i < n; ++i) ws.v[static_cast<std::size_t>(i) * n + i] = 1.0;
  ws.vals.resize(n);
  jacobi_hermitian_raw(n, ws.a.data(), ws.v.data(), ws.vals.data());

  // cluster the eigen-angles (relative 1e-10) before the functional calculus
  ws.idx.resize(n);
  for (int k = 0; k < n; ++k) ws.idx[k] = k;
  std::sort(ws.idx.begin(), ws.idx.end(),
            [&](int p, int q) { return ws.vals[p] < ws.vals[q]; });
  ws.sorted.resize(n);
  for (int k = 0; k < n; ++k) ws.sorted[k] = ws.vals[ws.idx[k]];
  cluster_to_means(ws.sorted, 1e-10);
  for (int k = 0; k < n; ++k) ws.vals[ws.idx[k]] = ws.sorted[k];

  ws.f.resize(n);
  for (int k = 0; k < n; ++k)
    ws.f[k] = cplx(std::cos(ws.vals[k]), std::sin(ws.vals[k]));
  const cplx* v = ws.v.data();
  for (int i = 0; i < n; ++i) {
    const cplx* vi = v + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const cplx* vj = v + static_cast<std::size_t>(j) * n;
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += vi[k] * ws.f[k] * std::conj(vj[k]);
      out(i, j) = acc;
    }
  }
}

}  // namespace detail

UnitaryMatrix expm_skew(const SkewHermitian& x) {
  ComplexMatrix out(x.dim());
  detail::expm_skew_into(x.matrix(), out);
  return UnitaryMatrix::trusted(std::move(out));
}

SkewHermitian logm_unitary(const UnitaryMatrix& u) {
  const int n = u.dim();
  ComplexMatrix a = u.matrix();
  {
    // The joint diagonalization needs (u+u*)/2 and (u-u*)/2i to commute at
    // working precision; inputs near the 1e-10 drift budget get polished
    // back onto the group first (moves the log by at most the drift).
    ComplexMatrix g(n);
    matmul_adjoint_lhs(a, a, g);
    for (int i = 0; i < n; ++i) g(i, i) -= 1.0;
    if (g.max_abs() > 1e-12) a = polar_unitary(a).matrix();
  }
  ComplexMatrix h(n), s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx sum = a(i, j) + std::conj(a(j, i));
      const cplx diff = a(i, j) - std::conj(a(j, i));
      h(i, j) = 0.5 * sum;
      s(i, j) = cplx(0.0, -0.5) * diff;  // (u - u^*) / (2i)
    }
  std::vector<double> hv, sv;
  ComplexMatrix v(n);
  detail::jacobi_commuting_pair(h, s, hv, sv, v);

  std::vector<double> angles(n);
  for (int k = 0; k < n; ++k) {
    double t = std::atan2(sv[k], hv[k]);
    if (t <= -kPi + 1e-12) t = kPi;  // fixed branch at eigenvalue -1
    angles[k] = t;
  }
  // Stabilize near-degenerate spectra: angles closer than 1e-10 (relative)
  // collapse to their cluster mean.
  {
    std::vector<int> idx(n);
    for (int k = 0; k < n; ++k) idx[k] = k;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int p, int q) { return angles[p] < angles[q]; });
    std::vector<double> sorted(n);
    for (int k = 0; k < n; ++k) sorted[k] = angles[idx[k]];
    cluster_to_means(sorted, 1e-10);
    for (int k = 0; k < n; ++k) angles[idx[k]] = sorted[k];
  }

  ComplexMatrix z(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += v(i, k) * cplx(0.0, angles[k]) * std::conj(v(j, k));
      z(i, j) = acc;
    }
  return SkewHermitian::skew_projection(z);
}

double schatten_norm(const ComplexMatrix& a, double k) {
  if (std::isnan(k) || k < 1.0) throw InvalidInput("schatten_norm: k must be >= 1");
  const int n = a.dim();
  EigWorkspace& ws = tl_ws;
  // one-sided Jacobi keeps small singular values accurate to roundoff
  ws.a.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) ws.a[static_cast<std::size_t>(j) * n + i] = a(i, j);
  detail::hestenes_raw(n, n, ws.a.data(), nullptr);
  ws.vals.resize(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    const cplx* col = ws.a.data() + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < n; ++i) s += std::norm(col[i]);
    ws.vals[j] = s;  // squared singular value
  }
  double top = 0.0;
  for (double v : ws.vals) top = std::max(top, v);
  const double smax = std::sqrt(top);
  if (std::isinf(k) || smax == 0.0) return smax;
  if (k == 2.0) {  // exact exponent: sum of squared column norms
    double acc = 0.0;
    for (double v : ws.vals) acc += v / top;
    return smax * std::sqrt(acc);
  }
  double acc = 0.0;
  for (double v : ws.vals) acc += std::pow(std::sqrt(v) / smax, k);
  return smax * std::pow(acc, 1.0 / k);
}

cplx trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("trace_inner: dimension mismatch");
  const int n = a.dim();
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += std::conj(b(i, j)) * a(i, j);
  return acc;
}

}  // namespace grassgeo
