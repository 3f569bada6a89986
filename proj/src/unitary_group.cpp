#include "grassgeo/unitary_group.hpp"

#include <cmath>

#include "grassgeo/errors.hpp"
#include "grassgeo/spectral.hpp"

namespace grassgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

UnitaryMatrix unitary_geodesic_eval(const UnitaryGeodesic& g, double t) {
  const UnitaryMatrix step = expm_skew(g.direction.scaled(t));
  return UnitaryMatrix::from_matrix(g.base.matrix() * step.matrix());
}

SpectralDirection::SpectralDirection(std::vector<double> angles,
                                     std::vector<ComplexMatrix> projections,
                                     ComplexMatrix kernel_projection)
    : angles_(std::move(angles)),
      projections_(std::move(projections)),
      kernel_projection_(std::move(kernel_projection)) {}

SpectralDirection SpectralDirection::from_direction(const SkewHermitian& x) {
  const int n = x.dim();
  ComplexMatrix h(n);
  const ComplexMatrix& m = x.matrix();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = cplx(0.0, -1.0) * m(i, j);
  std::vector<double> values;
  ComplexMatrix vectors(n);
  detail::jacobi_hermitian(h, values, &vectors);

  double radius = 0.0;
  for (double v : values) radius = std::max(radius, std::abs(v));
  if (radius > kPi + 1e-12)
    throw InvalidInput("SpectralDirection: ||x|| exceeds pi");

  std::vector<double> clustered = values;
  cluster_to_means(clustered, 1e-10);

  std::vector<double> angles;
  std::vector<ComplexMatrix> projections;
  ComplexMatrix kernel(n);
  std::size_t start = 0;
  while (start < clustered.size()) {
    std::size_t end = start + 1;
    while (end < clustered.size() && clustered[end] == clustered[start]) ++end;
    ComplexMatrix proj(n);
    for (std::size_t k = start; k < end; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          proj(i, j) += vectors(i, static_cast<int>(k)) *
                        std::conj(vectors(j, static_cast<int>(k)));
    const double mean = clustered[start];
    if (std::abs(mean) <= 1e-10 * std::max(radius, 1e-300)) {
      kernel += proj;
    } else {
      angles.push_back(mean);
      projections.push_back(std::move(proj));
    }
    start = end;
  }
  return SpectralDirection(std::move(angles), std::move(projections), std::move(kernel));
}

SpectralDirection SpectralDirection::from_parts(std::vector<double> angles,
                                                std::vector<ComplexMatrix> projections,
                                                ComplexMatrix kernel_projection) {
  if (angles.size() != projections.size())
    throw InvalidInput("SpectralDirection: angles/projections size mismatch");
  const int n = kernel_projection.dim();
  for (double a : angles)
    if (std::abs(a) > kPi + 1e-12)
      throw InvalidInput("SpectralDirection: |angle| exceeds pi");
  ComplexMatrix sum = kernel_projection;
  for (const ComplexMatrix& p : projections) {
    if (p.dim() != n) throw InvalidInput("SpectralDirection: dimension mismatch");
    ComplexMatrix idem = p * p - p;
    if (idem.max_abs() > 1e-8)
      throw InvalidInput("SpectralDirection: component is not a projection");
    sum += p;
  }
  for (std::size_t i = 0; i < projections.size(); ++i)
    for (std::size_t j = i + 1; j < projections.size(); ++j) {
      if ((projections[i] * projections[j]).max_abs() > 1e-8)
        throw InvalidInput("SpectralDirection: projections are not pairwise orthogonal");
    }
  for (int i = 0; i < n; ++i) sum(i, i) -= 1.0;
  if (sum.max_abs() > 1e-8)
    throw InvalidInput("SpectralDirection: projections do not resolve the identity");
  return SpectralDirection(std::move(angles), std::move(projections),
                           std::move(kernel_projection));
}

std::vector<double> SpectralDirection::component_radii() const {
  std::vector<double> radii;
  radii.reserve(projections_.size());
  for (const ComplexMatrix& p : projections_)
    radii.push_back(std::sqrt(std::max(p.trace().real(), 0.0)));
  return radii;
}

SkewHermitian SpectralDirection::reconstruct() const {
  ComplexMatrix m(dim());
  for (std::size_t k = 0; k < angles_.size(); ++k) {
    ComplexMatrix term = projections_[k];
    term *= cplx(0.0, angles_[k]);
    m += term;
  }
  return SkewHermitian::skew_projection(m);
}

SkewHermitian unitary_log_bv(const UnitaryMatrix& u0, const UnitaryMatrix& u1) {
  if (u0.dim() != u1.dim()) throw InvalidInput("unitary_log_bv: dimension mismatch");
  return logm_unitary(UnitaryMatrix::from_matrix(u0.matrix().adjoint() * u1.matrix()));
}

double unitary_distance(const UnitaryMatrix& u0, const UnitaryMatrix& u1) {
  return schatten_norm(unitary_log_bv(u0, u1).matrix(), 2.0);
}

double critical_ratio(const SkewHermitian& x) {
  if (x.matrix().max_abs() == 0.0) throw InvalidInput("critical_ratio: x must be nonzero");
  return schatten_norm(x.matrix(), 2.0) / skew_operator_norm(x);
}

std::vector<ComplexMatrix> sphere_projection(const UnitaryMatrix& u,
                                             const SpectralDirection& d) {
  if (u.dim() != d.dim()) throw InvalidInput("sphere_projection: dimension mismatch");
  const auto& ps = d.projections();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if ((ps[i] * ps[j]).max_abs() > 1e-8)
        throw InvalidInput("sphere_projection: projections are not pairwise orthogonal");
  std::vector<ComplexMatrix> out;
  out.reserve(ps.size());
  for (const ComplexMatrix& p : ps) out.push_back(p * u.matrix());
  return out;
}

}  // namespace grassgeo
