#include "grassgeo/grassmannian.hpp"

#include <cmath>
#include <vector>

#include "grassgeo/errors.hpp"
#include "grassgeo/spectral.hpp"

namespace grassgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSubspaceSvThreshold = 1e-8;
constexpr double kBranchBand = 1e-8;

RectMatrix stack_vertical(const ComplexMatrix& top, const ComplexMatrix& bottom) {
  const int n = top.dim();
  RectMatrix s(2 * n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      s(i, j) = top(i, j);
      s(n + i, j) = bottom(i, j);
    }
  return s;
}

// out += scale * (u v^* - v u^*) for ambient column vectors u, v.
void add_skew_outer(ComplexMatrix& out, const cplx* u, const cplx* v, double scale) {
  const int n = out.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) += scale * (u[i] * std::conj(v[j]) - v[i] * std::conj(u[j]));
}

}  // namespace

TangentVector TangentVector::from_matrix(const ProjectionPoint& q, const ComplexMatrix& m) {
  if (m.dim() != q.dim()) throw InvalidInput("TangentVector: dimension mismatch");
  const int n = m.dim();
  ComplexMatrix herm_dev(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      herm_dev(i, j) = cplx(0.0, -1.0) * (m(i, j) - std::conj(m(j, i)));
  const double scale = std::max(m.max_abs(), 1e-300);
  if (herm_dev.max_abs() > 1e-10 * n * scale ||
      (herm_dev.max_abs() * n > 1e-10 * scale &&
       hermitian_operator_norm(herm_dev) > 1e-10 * operator_norm(m)))
    throw InvalidInput("TangentVector: matrix is not hermitian");

  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix projected = m * qm - 2.0 * (qm * (m * qm)) + qm * m;
  if ((projected - m).max_abs() > 1e-10 * std::max(1.0, scale))
    throw InvalidInput("TangentVector: matrix is not tangent at q");
  return TangentVector(q, m);
}

ProjectionPoint conjugate_by(const UnitaryMatrix& u, const ProjectionPoint& q) {
  if (u.dim() != q.dim()) throw InvalidInput("conjugate_by: dimension mismatch");
  const int n = q.dim();
  ComplexMatrix tmp(n), out(n);
  matmul(u.matrix(), q.matrix(), tmp);
  matmul_adjoint_rhs(tmp, u.matrix(), out);
  return ProjectionPoint::trusted(std::move(out), q.rank());
}

TangentVector tangent_project(const ProjectionPoint& q, const ComplexMatrix& a) {
  if (a.dim() != q.dim()) throw InvalidInput("tangent_project: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix herm_dev(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      herm_dev(i, j) = cplx(0.0, -1.0) * (a(i, j) - std::conj(a(j, i)));
  const double a_max = a.max_abs();
  if (a_max > 0.0) {
    const double dev_max = herm_dev.max_abs();
    if (dev_max * n > 1e-10 * a_max) {
      if (dev_max > 1e-10 * n * a_max ||
          hermitian_operator_norm(herm_dev) > 1e-10 * operator_norm(a))
        throw InvalidInput("tangent_project: a is not hermitian");
    }
  }
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix aq = a * qm;
  const ComplexMatrix qa = qm * a;
  const ComplexMatrix qaq = qm * aq;
  ComplexMatrix v = aq - 2.0 * qaq + qa;
  return TangentVector::trusted(q, hermitian_part(v));
}

SkewHermitian codiagonal_lift(const TangentVector& v) {
  const ComplexMatrix& qm = v.base().matrix();
  return SkewHermitian::skew_projection(v.matrix() * qm - qm * v.matrix());
}

UnitaryMatrix cross_section(const ProjectionPoint& p, const ProjectionPoint& q) {
  if (p.dim() != q.dim()) throw InvalidInput("cross_section: dimension mismatch");
  const double dist = hermitian_operator_norm(p.matrix() - q.matrix());
  if (dist >= 1.0 - 1e-10)
    throw NotInSectionDomain("cross_section: ||p - q|| >= 1");
  const ComplexMatrix s =
      q.matrix() * p.matrix() + q.complement_matrix() * p.complement_matrix();
  return polar_unitary(s);
}

ProjectionPoint grass_geodesic_eval(const ProjectionPoint& q, const SkewHermitian& z,
                                    double t) {
  if (q.dim() != z.dim()) throw InvalidInput("grass_geodesic_eval: dimension mismatch");
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix& zm = z.matrix();
  const ComplexMatrix qz = qm * zm;
  const ComplexMatrix qzq = qz * qm;
  // q-diagonal part of z: qzq + (1-q)z(1-q) = z - qz - zq + 2 qzq
  const ComplexMatrix diag_part = zm - qz - zm * qm + 2.0 * qzq;
  if (diag_part.frobenius() > 1e-8 * zm.frobenius())
    throw InvalidInput("grass_geodesic_eval: z is not q-codiagonal");
  return conjugate_by(expm_skew(z.scaled(t)), q);
}

UnitaryMatrix symmetry_embed(const ProjectionPoint& q, const ProjectionPoint& p) {
  if (p.dim() != q.dim()) throw InvalidInput("symmetry_embed: dimension mismatch");
  return UnitaryMatrix::from_matrix(q.symmetry() * p.symmetry());
}

ComplexMatrix symmetry_embed_differential(const TangentVector& v,
                                          const ProjectionPoint& p) {
  if (p.dim() != v.base().dim())
    throw InvalidInput("symmetry_embed_differential: dimension mismatch");
  ComplexMatrix d = v.matrix() * p.symmetry();
  d *= cplx(2.0, 0.0);
  return d;
}

SubspaceSplit subspace_split(const ProjectionPoint& q0, const ProjectionPoint& q1) {
  if (q0.dim() != q1.dim()) throw InvalidInput("subspace_split: dimension mismatch");
  if (q0.rank() != q1.rank())
    throw NotSameOrbit("subspace_split: projections have different rank");
  const int n = q0.dim();
  const ComplexMatrix& a = q0.matrix();
  const ComplexMatrix& b = q1.matrix();
  const ComplexMatrix ac = q0.complement_matrix();
  const ComplexMatrix bc = q1.complement_matrix();

  RectMatrix h00 = detail::null_space(stack_vertical(a, b), kSubspaceSvThreshold);
  RectMatrix h01 = detail::null_space(stack_vertical(a, bc), kSubspaceSvThreshold);
  RectMatrix h10 = detail::null_space(stack_vertical(ac, b), kSubspaceSvThreshold);
  RectMatrix h11 = detail::null_space(stack_vertical(ac, bc), kSubspaceSvThreshold);

  if (h01.cols() != h10.cols())
    throw NumericalFailure("subspace_split: dim(ker q0 ∩ ran q1) != dim(ran q0 ∩ ker q1)");

  // Generic part: complement of the four intersections, read off the
  // spectral gap of the sum of their projectors.
  ComplexMatrix p4(n);
  for (const RectMatrix* basis : {&h00, &h01, &h10, &h11})
    for (int j = 0; j < basis->cols(); ++j) {
      const cplx* col = basis->col(j);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) p4(r, c) += col[r] * std::conj(col[c]);
    }
  std::vector<double> p4_vals;
  ComplexMatrix p4_vecs(n);
  detail::jacobi_hermitian(p4, p4_vals, &p4_vecs);
  int d0 = 0;
  while (d0 < n && p4_vals[d0] < 0.5) ++d0;  // ascending: generic directions first

  const int g = d0 / 2;
  if (2 * g != d0)
    throw NumericalFailure("subspace_split: generic part has odd dimension");
  if (h11.cols() + g + h10.cols() != q0.rank() ||
      h00.cols() + g + h01.cols() != n - q0.rank())
    throw NumericalFailure("subspace_split: subspace dimensions are inconsistent");

  RectMatrix h0(n, d0);
  RectMatrix angle_op(g, g);
  if (d0 > 0) {
    RectMatrix b0(n, d0);
    for (int j = 0; j < d0; ++j)
      for (int i = 0; i < n; ++i) b0(i, j) = p4_vecs(i, j);

    // q0 reduces the generic part; split it into the ran-q0 half and its
    // complement through the compression's 0/1 spectral gap.
    ComplexMatrix c0(d0);
    for (int r = 0; r < d0; ++r)
      for (int c = 0; c < d0; ++c) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) acc += std::conj(b0(i, r)) * a(i, k) * b0(k, c);
        c0(r, c) = acc;
      }
    std::vector<double> c0_vals;
    ComplexMatrix c0_vecs(d0);
    detail::jacobi_hermitian(c0, c0_vals, &c0_vecs);
    int kernel_half = 0;
    while (kernel_half < d0 && c0_vals[kernel_half] < 0.5) ++kernel_half;
    if (kernel_half != g)
      throw NumericalFailure("subspace_split: generic halves are unbalanced");

    // Ambient basis of ran q0 ∩ H0 (columns g..d0-1 of the compression
    // eigenbasis, eigenvalue 1).
    RectMatrix xi(n, g);
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int r = 0; r < d0; ++r) acc += b0(i, r) * c0_vecs(r, g + j);
        xi(i, j) = acc;
      }

    // Angle operator: c^2 is the compression of q0 q1 q0 to the half-generic
    // block; eigenvalues clamped to [0,1] before arccos.
    ComplexMatrix ag(g);
    std::vector<cplx> q1xi(static_cast<std::size_t>(n) * g);
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) acc += b(i, k) * xi(k, j);
        q1xi[static_cast<std::size_t>(j) * n + i] = acc;
      }
    for (int r = 0; r < g; ++r)
      for (int c = 0; c < g; ++c) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i)
          acc += std::conj(xi(i, r)) * q1xi[static_cast<std::size_t>(c) * n + i];
        ag(r, c) = acc;
      }
    std::vector<double> cos2;
    ComplexMatrix ag_vecs(g);
    detail::jacobi_hermitian(ag, cos2, &ag_vecs);

    // Canonical generic basis: xi_i (ran q0 side) and eta_i, the normalized
    // component of q1 xi_i orthogonal to xi_i.
    for (int j = 0; j < g; ++j) {
      const double c2 = std::min(std::max(cos2[j], 0.0), 1.0);
      const double theta = std::acos(std::sqrt(c2));
      angle_op(j, j) = theta;
      const double cth = std::cos(theta), sth = std::sin(theta);
      std::vector<cplx> xi_amb(n, 0.0), eta_amb(n, 0.0);
      for (int i = 0; i < n; ++i) {
        cplx xv = 0.0, qv = 0.0;
        for (int r = 0; r < g; ++r) {
          xv += xi(i, r) * ag_vecs(r, j);
          qv += q1xi[static_cast<std::size_t>(r) * n + i] * ag_vecs(r, j);
        }
        xi_amb[i] = xv;
        eta_amb[i] = qv - c2 * xv;
      }
      const double denom = cth * sth;
      if (denom < 1e-12)
        throw NumericalFailure("subspace_split: angle too close to 0 or pi/2 for the generic part");
      for (int i = 0; i < n; ++i) eta_amb[i] /= denom;
      // polish eta against the previously built ones
      for (int prev = 0; prev < j; ++prev) {
        cplx ip = 0.0;
        for (int i = 0; i < n; ++i) ip += std::conj(h0(i, g + prev)) * eta_amb[i];
        for (int i = 0; i < n; ++i) eta_amb[i] -= ip * h0(i, g + prev);
      }
      double nrm = 0.0;
      for (int i = 0; i < n; ++i) nrm += std::norm(eta_amb[i]);
      nrm = std::sqrt(nrm);
      if (nrm < 0.5)
        throw NumericalFailure("subspace_split: degenerate generic partner vector");
      for (int i = 0; i < n; ++i) {
        h0(i, j) = xi_amb[i];
        h0(i, g + j) = eta_amb[i] / nrm;
      }
    }
  }

  RectMatrix pairing(h10.cols(), h10.cols());
  for (int j = 0; j < pairing.cols(); ++j) pairing(j, j) = 1.0;

  return SubspaceSplit{std::move(h00), std::move(h01), std::move(h10),
                       std::move(h11), std::move(h0),  std::move(angle_op),
                       std::move(pairing)};
}

SkewHermitian grass_log_principal(const ProjectionPoint& q0, const ProjectionPoint& q1) {
  const SubspaceSplit split = subspace_split(q0, q1);
  const int n = q0.dim();
  const int g = split.angle_operator.rows();
  ComplexMatrix z(n);
  for (int j = 0; j < g; ++j) {
    const double theta = split.angle_operator(j, j).real();
    add_skew_outer(z, split.h0.col(g + j), split.h0.col(j), theta);  // theta (eta xi^* - xi eta^*)
  }
  for (int j = 0; j < split.h10.cols(); ++j)
    add_skew_outer(z, split.h01.col(j), split.h10.col(j), kPi / 2.0);
  return SkewHermitian::skew_projection(z);
}

GrassLog grass_log_bv(const ProjectionPoint& q0, const ProjectionPoint& q1) {
  if (q0.dim() != q1.dim()) throw InvalidInput("grass_log_bv: dimension mismatch");
  if (q0.rank() != q1.rank())
    throw NotSameOrbit("grass_log_bv: projections have different rank");
  const double dist = hermitian_operator_norm(q0.matrix() - q1.matrix());
  if (dist < 1.0 - kBranchBand) {
    const UnitaryMatrix s =
        UnitaryMatrix::from_matrix(q1.symmetry() * q0.symmetry());
    return GrassLog{logm_unitary(s).scaled(0.5), GeodesicBranch::kHalfLog};
  }
  return GrassLog{grass_log_principal(q0, q1), GeodesicBranch::kPrincipalAngles};
}

double grass_distance(const ProjectionPoint& q0, const ProjectionPoint& q1) {
  return schatten_norm(grass_log_bv(q0, q1).direction.matrix(), 2.0);
}

}  // namespace grassgeo
