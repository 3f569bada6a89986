#ifndef GRASSGEO_UNITARY_GROUP_HPP
#define GRASSGEO_UNITARY_GROUP_HPP

#include <vector>

#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/types.hpp"

namespace grassgeo {

/// Geodesic t -> u e^{t x} of the unitary group.
struct UnitaryGeodesic {
  UnitaryMatrix base;       // u
  SkewHermitian direction;  // x
};

UnitaryMatrix unitary_geodesic_eval(const UnitaryGeodesic& g, double t);

/// Finite-spectrum form of a skew-hermitian direction: angles alpha_i with
/// pairwise-orthogonal spectral projections p_i and the kernel projection
/// p_0, so that x = sum_i (i alpha_i) p_i and sum_i p_i = 1 - p_0.
class SpectralDirection {
public:
  /// Extracts the spectral data of x; eigen-angles sharing a cluster
  /// (relative tolerance 1e-10) are merged into one projection block.
  /// Requires ||x|| <= pi.
  static SpectralDirection from_direction(const SkewHermitian& x);

  /// Builds from explicit data; validates orthogonality and the resolution
  /// of identity.
  static SpectralDirection from_parts(std::vector<double> angles,
                                      std::vector<ComplexMatrix> projections,
                                      ComplexMatrix kernel_projection);

  const std::vector<double>& angles() const { return angles_; }
  const std::vector<ComplexMatrix>& projections() const { return projections_; }
  const ComplexMatrix& kernel_projection() const { return kernel_projection_; }
  int dim() const { return kernel_projection_.dim(); }

  /// r_i = Tr(p_i)^{1/2}, the sphere radii of the component map.
  std::vector<double> component_radii() const;

  /// sum_i (i alpha_i) p_i; matches the source within 1e-10.
  SkewHermitian reconstruct() const;

private:
  SpectralDirection(std::vector<double> angles, std::vector<ComplexMatrix> projections,
                    ComplexMatrix kernel_projection);
  std::vector<double> angles_;
  std::vector<ComplexMatrix> projections_;
  ComplexMatrix kernel_projection_;
};

/// Boundary-value log: the direction x with u0 e^x = u1, ||x|| <= pi.
/// Unique when ||u0 - u1|| < 2.
SkewHermitian unitary_log_bv(const UnitaryMatrix& u0, const UnitaryMatrix& u1);

/// Geodesic distance d_2(u0, u1) = ||unitary_log_bv(u0, u1)||_2. Satisfies
/// sqrt(1 - pi^2/12) d_2 <= ||u0 - u1||_2 <= d_2.
double unitary_distance(const UnitaryMatrix& u0, const UnitaryMatrix& u1);

/// C_x = ||x||_2 / ||x||; >= 1, equal to 1 exactly for rank-one directions.
/// The geodesic e^{tx} stays minimal while t ||x||_2 <= C_x pi.
double critical_ratio(const SkewHermitian& x);

/// Component map u -> (p_1 u, ..., p_n u) into a product of Hilbert-Schmidt
/// spheres; each component has constant 2-norm r_i along unitary curves and
/// the map contracts curve length.
std::vector<ComplexMatrix> sphere_projection(const UnitaryMatrix& u,
                                             const SpectralDirection& d);

}  // namespace grassgeo

#endif
