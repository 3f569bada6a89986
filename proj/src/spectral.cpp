#include "grassgeo/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "grassgeo/errors.hpp"
#include "grassgeo/matrix_ops.hpp"

namespace grassgeo {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffThresholdFactor = 1e-13;

double offdiag_sq_raw(int n, const cplx* a) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      s += std::norm(a[static_cast<std::size_t>(i) * n + j]) +
           std::norm(a[static_cast<std::size_t>(j) * n + i]);
  return s;
}

struct Rotation {
  double c;
  cplx s;
};

// Applies the plane rotation J (J_pp = c, J_pq = -conj(s), J_qp = s,
// J_qq = c) as a <- J^* a J.
void rotate_similarity_raw(int n, cplx* a, int p, int q, const Rotation& r) {
  const cplx sc = std::conj(r.s);
  cplx* rp = a + static_cast<std::size_t>(p) * n;
  cplx* rq = a + static_cast<std::size_t>(q) * n;
  for (int k = 0; k < n; ++k) {  // columns: a <- a J
    cplx& akp = a[static_cast<std::size_t>(k) * n + p];
    cplx& akq = a[static_cast<std::size_t>(k) * n + q];
    const cplx old_p = akp, old_q = akq;
    akp = r.c * old_p + r.s * old_q;
    akq = -sc * old_p + r.c * old_q;
  }
  for (int k = 0; k < n; ++k) {  // rows: a <- J^* a
    const cplx apk = rp[k], aqk = rq[k];
    rp[k] = r.c * apk + sc * aqk;
    rq[k] = -r.s * apk + r.c * aqk;
  }
}

void rotate_columns_raw(int n, cplx* v, int p, int q, const Rotation& r) {
  const cplx sc = std::conj(r.s);
  for (int k = 0; k < n; ++k) {
    cplx& vkp = v[static_cast<std::size_t>(k) * n + p];
    cplx& vkq = v[static_cast<std::size_t>(k) * n + q];
    const cplx old_p = vkp, old_q = vkq;
    vkp = r.c * old_p + r.s * old_q;
    vkq = -sc * old_p + r.c * old_q;
  }
}

void rotate_similarity(ComplexMatrix& a, int p, int q, const Rotation& r) {
  rotate_similarity_raw(a.dim(), a.data(), p, q, r);
}

void rotate_columns(ComplexMatrix& v, int p, int q, const Rotation& r) {
  rotate_columns_raw(v.dim(), v.data(), p, q, r);
}

double offdiag_sq(const ComplexMatrix& a) { return offdiag_sq_raw(a.dim(), a.data()); }

// Rotation annihilating the off-diagonal entry of the hermitian 2x2 block
// [[app, apq], [conj(apq), aqq]]. Magnitudes via sqrt(norm): the pivot skip
// keeps entries far from the under/overflow range.
Rotation hermitian_pivot_rotation(double app, double aqq, cplx apq) {
  const double mag = std::sqrt(std::norm(apq));
  Rotation r{1.0, cplx(0.0, 0.0)};
  if (mag == 0.0) return r;
  const cplx w = apq / mag;
  const double tau = (app - aqq) / (2.0 * mag);
  double t;
  if (tau == 0.0) {
    t = 1.0;
  } else {
    t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c * std::conj(w);
  return r;
}

void sort_with_vectors(std::vector<double>& values, ComplexMatrix* vectors) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (int k = 0; k < n; ++k) sorted[k] = values[idx[k]];
  values = std::move(sorted);
  if (vectors) {
    ComplexMatrix perm(vectors->dim());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) perm(i, j) = (*vectors)(i, idx[j]);
    *vectors = std::move(perm);
  }
}

// Leading unit eigenvector of a real symmetric PSD 3x3 matrix, by cyclic
// real Jacobi. Sign-normalized so the first component is >= 0.
std::array<double, 3> leading_eigvec3(std::array<std::array<double, 3>, 3> g) {
  std::array<std::array<double, 3>, 3> v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 20; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) off += g[p][q] * g[p][q];
    if (off <= 1e-32) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        const double apq = g[p][q];
        if (apq == 0.0) continue;
        const double tau = (g[p][p] - g[q][q]) / (2.0 * apq);
        const double t =
            (tau == 0.0) ? 1.0
                         : (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double gkp = g[k][p], gkq = g[k][q];
          g[k][p] = c * gkp + s * gkq;
          g[k][q] = -s * gkp + c * gkq;
        }
        for (int k = 0; k < 3; ++k) {
          const double gpk = g[p][k], gqk = g[q][k];
          g[p][k] = c * gpk + s * gqk;
          g[q][k] = -s * gpk + c * gqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp + s * vkq;
          v[k][q] = -s * vkp + c * vkq;
        }
      }
  }
  int best = 0;
  for (int k = 1; k < 3; ++k)
    if (g[k][k] > g[best][best]) best = k;
  std::array<double, 3> lead{v[0][best], v[1][best], v[2][best]};
  // deterministic sign
  if (lead[0] < 0.0 || (lead[0] == 0.0 && (lead[1] < 0.0 || (lead[1] == 0.0 && lead[2] < 0.0))))
    for (double& x : lead) x = -x;
  return lead;
}

}  // namespace

namespace detail {

void jacobi_hermitian_raw(int n, cplx* a, cplx* v, double* values) {
  double fro_sq = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k) fro_sq += std::norm(a[k]);
  const double fro = std::sqrt(fro_sq);
  const double thr = kOffThresholdFactor * fro;
  const double pivot_skip = (n > 1) ? thr / (2.0 * n) : 0.0;

  bool converged = (fro == 0.0) || (n == 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (std::sqrt(offdiag_sq_raw(n, a)) <= thr) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        cplx& apq = a[static_cast<std::size_t>(p) * n + q];
        if (std::norm(apq) <= pivot_skip * pivot_skip) continue;
        cplx& app = a[static_cast<std::size_t>(p) * n + p];
        cplx& aqq = a[static_cast<std::size_t>(q) * n + q];
        const Rotation r = hermitian_pivot_rotation(app.real(), aqq.real(), apq);
        rotate_similarity_raw(n, a, p, q, r);
        apq = 0.0;
        a[static_cast<std::size_t>(q) * n + p] = 0.0;
        app = app.real();
        aqq = aqq.real();
        if (v) rotate_columns_raw(n, v, p, q, r);
      }
    if (std::sqrt(offdiag_sq_raw(n, a)) <= thr) converged = true;
  }
  if (!converged)
    throw NumericalFailure("jacobi_hermitian: no convergence within 100 sweeps");
  for (int i = 0; i < n; ++i) values[i] = a[static_cast<std::size_t>(i) * n + i].real();
}

void jacobi_hermitian(const ComplexMatrix& a_in, std::vector<double>& values,
                      ComplexMatrix* vectors) {
  const int n = a_in.dim();
  ComplexMatrix a = hermitian_part(a_in);
  values.resize(n);
  if (vectors) {
    ComplexMatrix v = ComplexMatrix::identity(n);
    jacobi_hermitian_raw(n, a.data(), v.data(), values.data());
    sort_with_vectors(values, &v);
    *vectors = std::move(v);
  } else {
    jacobi_hermitian_raw(n, a.data(), nullptr, values.data());
    sort_with_vectors(values, nullptr);
  }
}

void jacobi_commuting_pair(const ComplexMatrix& h_in, const ComplexMatrix& s_in,
                           std::vector<double>& h_values, std::vector<double>& s_values,
                           ComplexMatrix& vectors) {
  const int n = h_in.dim();
  if (s_in.dim() != n) throw InvalidInput("commuting pair: dimension mismatch");
  ComplexMatrix h = hermitian_part(h_in);
  ComplexMatrix s = hermitian_part(s_in);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double fro = std::sqrt(h.frobenius() * h.frobenius() + s.frobenius() * s.frobenius());
  const double thr = kOffThresholdFactor * fro;
  const double pivot_skip_sq = (n > 1) ? (thr / (2.0 * n)) * (thr / (2.0 * n)) : 0.0;

  bool converged = (fro == 0.0) || (n == 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (std::sqrt(offdiag_sq(h) + offdiag_sq(s)) <= thr) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::norm(h(p, q)) + std::norm(s(p, q)) <= pivot_skip_sq) continue;
        // Joint diagonal-gain maximization: the optimal plane rotation comes
        // from the leading eigenvector of the 3x3 Gram of the pivot vectors
        // [a_pp - a_qq, 2 Re a_pq, 2 Im a_pq].
        std::array<std::array<double, 3>, 3> g{};
        for (const ComplexMatrix* m : {&h, &s}) {
          const std::array<double, 3> gv{(*m)(p, p).real() - (*m)(q, q).real(),
                                         2.0 * (*m)(p, q).real(), 2.0 * (*m)(p, q).imag()};
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g[i][j] += gv[i] * gv[j];
        }
        const std::array<double, 3> lead = leading_eigvec3(g);
        const double x = std::max(lead[0], 0.0);
        const double denom = 2.0 * (x + 1.0);
        if (denom <= 0.0) continue;
        Rotation r;
        r.c = std::sqrt((x + 1.0) / 2.0);
        r.s = cplx(lead[1], -lead[2]) / std::sqrt(2.0 * (x + 1.0));
        if (std::abs(r.s) < 1e-300) continue;
        rotate_similarity(h, p, q, r);
        rotate_similarity(s, p, q, r);
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
        s(p, p) = s(p, p).real();
        s(q, q) = s(q, q).real();
        rotate_columns(v, p, q, r);
      }
    if (std::sqrt(offdiag_sq(h) + offdiag_sq(s)) <= thr) converged = true;
  }
  if (!converged)
    throw NumericalFailure(
        "jacobi_commuting_pair: no convergence within 100 sweeps (inputs may not commute)");

  h_values.resize(n);
  s_values.resize(n);
  for (int i = 0; i < n; ++i) {
    h_values[i] = h(i, i).real();
    s_values[i] = s(i, i).real();
  }
  // deterministic order: lexicographic in (h, s)
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (h_values[a] != h_values[b]) return h_values[a] < h_values[b];
    return s_values[a] < s_values[b];
  });
  std::vector<double> hs(n), ss(n);
  ComplexMatrix perm(n);
  for (int k = 0; k < n; ++k) {
    hs[k] = h_values[idx[k]];
    ss[k] = s_values[idx[k]];
    for (int i = 0; i < n; ++i) perm(i, k) = v(i, idx[k]);
  }
  h_values = std::move(hs);
  s_values = std::move(ss);
  vectors = std::move(perm);
}

void hestenes_raw(int rows, int cols, cplx* b, cplx* v) {
  constexpr int kSvdSweeps = 60;
  bool converged = (cols <= 1);
  for (int sweep = 0; sweep < kSvdSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < cols - 1; ++p)
      for (int q = p + 1; q < cols; ++q) {
        cplx* cp = b + static_cast<std::size_t>(p) * rows;
        cplx* cq = b + static_cast<std::size_t>(q) * rows;
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (int i = 0; i < rows; ++i) {
          alpha += std::norm(cp[i]);
          beta += std::norm(cq[i]);
          gamma += std::conj(cp[i]) * cq[i];
        }
        if (std::norm(gamma) <= 1e-28 * alpha * beta) continue;
        rotated = true;
        const Rotation r = hermitian_pivot_rotation(alpha, beta, gamma);
        const cplx sc = std::conj(r.s);
        for (int i = 0; i < rows; ++i) {
          const cplx bp = cp[i], bq = cq[i];
          cp[i] = r.c * bp + r.s * bq;
          cq[i] = -sc * bp + r.c * bq;
        }
        if (v) {
          cplx* vp = v + static_cast<std::size_t>(p) * cols;
          cplx* vq = v + static_cast<std::size_t>(q) * cols;
          for (int i = 0; i < cols; ++i) {
            const cplx xp = vp[i], xq = vq[i];
            vp[i] = r.c * xp + r.s * xq;
            vq[i] = -sc * xp + r.c * xq;
          }
        }
      }
    if (!rotated) converged = true;
  }
  if (!converged) throw NumericalFailure("hestenes_raw: no convergence within 60 sweeps");
}

RightSvd jacobi_svd_right(const RectMatrix& a_in) {
  const int rows = a_in.rows();
  const int cols = a_in.cols();
  RectMatrix b = a_in;
  RectMatrix v(cols, cols);
  for (int j = 0; j < cols; ++j) v(j, j) = 1.0;
  hestenes_raw(rows, cols, b.col(0), cols > 0 ? v.col(0) : nullptr);

  std::vector<double> sv(cols);
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    const cplx* cj = b.col(j);
    for (int i = 0; i < rows; ++i) s += std::norm(cj[i]);
    sv[j] = std::sqrt(s);
  }
  std::vector<int> idx(cols);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return sv[x] > sv[y]; });
  RightSvd out{std::vector<double>(cols), RectMatrix(cols, cols)};
  for (int k = 0; k < cols; ++k) {
    out.singular_values[k] = sv[idx[k]];
    for (int i = 0; i < cols; ++i) out.v(i, k) = v(i, idx[k]);
  }
  return out;
}

RectMatrix null_space(const RectMatrix& a, double threshold) {
  const RightSvd svd = jacobi_svd_right(a);
  const int cols = a.cols();
  int count = 0;
  for (int j = 0; j < cols; ++j)
    if (svd.singular_values[j] <= threshold) ++count;
  RectMatrix basis(cols, count);
  int out = 0;
  for (int j = 0; j < cols; ++j) {
    if (svd.singular_values[j] > threshold) continue;
    double maxmod = 0.0;
    for (int i = 0; i < cols; ++i) maxmod = std::max(maxmod, std::abs(svd.v(i, j)));
    cplx phase(1.0, 0.0);
    for (int i = 0; i < cols; ++i) {
      const double m = std::abs(svd.v(i, j));
      if (m > 1e-8 * maxmod) {
        phase = std::conj(svd.v(i, j)) / m;
        break;
      }
    }
    for (int i = 0; i < cols; ++i) basis(i, out) = phase * svd.v(i, j);
    ++out;
  }
  return basis;
}

ComplexMatrix lu_inverse(const ComplexMatrix& a, double* log_abs_det) {
  const int n = a.dim();
  ComplexMatrix lu = a;
  std::vector<int> piv(n);
  double logdet = 0.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double m = std::abs(lu(i, k));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (best < 1e-250) throw SingularInput("lu_inverse: numerically singular matrix");
    piv[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
    logdet += std::log(best);
    const cplx pivot = lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / pivot;
      lu(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  if (log_abs_det) *log_abs_det = logdet;

  ComplexMatrix inv(n);
  std::vector<cplx> col(n);
  for (int rhs = 0; rhs < n; ++rhs) {
    for (int i = 0; i < n; ++i) col[i] = (i == rhs) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    for (int k = 0; k < n; ++k)
      if (piv[k] != k) std::swap(col[k], col[piv[k]]);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < i; ++k) col[i] -= lu(i, k) * col[k];
    for (int i = n - 1; i >= 0; --i) {
      for (int k = i + 1; k < n; ++k) col[i] -= lu(i, k) * col[k];
      col[i] /= lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, rhs) = col[i];
  }
  return inv;
}

}  // namespace detail

EigenSystem herm_eig(const ComplexMatrix& a) {
  // Precondition: hermitian within 1e-10 relative, in operator norm. The
  // entrywise bounds decide almost every call without an extra
  // eigendecomposition.
  const int n = a.dim();
  ComplexMatrix dev(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dev(i, j) = a(i, j) - std::conj(a(j, i));
  const double dev_max = dev.max_abs();
  const double a_max = a.max_abs();
  constexpr double tol = 1e-10;
  if (a_max > 0.0 && dev_max * n > tol * a_max) {  // not accepted by the cheap bound
    bool ok = false;
    if (dev_max <= tol * n * a_max) {
      // gray zone: compare true operator norms
      ComplexMatrix herm_dev(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) herm_dev(i, j) = cplx(0.0, -1.0) * dev(i, j);
      const double dev_norm = hermitian_operator_norm(herm_dev);
      const double a_norm = operator_norm(a);
      ok = dev_norm <= tol * a_norm;
    }
    if (!ok) throw InvalidInput("herm_eig: input is not hermitian");
  }

  std::vector<double> values;
  ComplexMatrix vectors(n);
  detail::jacobi_hermitian(a, values, &vectors);
  return EigenSystem{std::move(values), UnitaryMatrix::trusted(std::move(vectors))};
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& a) {
  std::vector<double> values;
  detail::jacobi_hermitian(a, values, nullptr);
  return values;
}

CommutingEigenSystem commuting_herm_eig(const ComplexMatrix& h, const ComplexMatrix& s) {
  std::vector<double> hv, sv;
  ComplexMatrix vectors(h.dim());
  detail::jacobi_commuting_pair(h, s, hv, sv, vectors);
  return CommutingEigenSystem{std::move(hv), std::move(sv),
                              UnitaryMatrix::trusted(std::move(vectors))};
}

void cluster_to_means(std::vector<double>& vals, double rel_tol) {
  if (vals.empty()) return;
  double scale = 0.0;
  for (double v : vals) scale = std::max(scale, std::abs(v));
  const double gap = rel_tol * scale;
  std::size_t start = 0;
  while (start < vals.size()) {
    std::size_t end = start + 1;
    while (end < vals.size() && vals[end] - vals[end - 1] <= gap) ++end;
    double mean = 0.0;
    for (std::size_t k = start; k < end; ++k) mean += vals[k];
    mean /= static_cast<double>(end - start);
    for (std::size_t k = start; k < end; ++k) vals[k] = mean;
    start = end;
  }
}

ComplexMatrix apply_spectral(const EigenSystem& es, const std::function<cplx(double)>& f) {
  std::vector<double> vals = es.values;
  cluster_to_means(vals, 1e-10);
  const int n = es.vectors.dim();
  const ComplexMatrix& v = es.vectors.matrix();
  std::vector<cplx> fv(n);
  for (int k = 0; k < n; ++k) fv[k] = f(vals[k]);
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += v(i, k) * fv[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace grassgeo
