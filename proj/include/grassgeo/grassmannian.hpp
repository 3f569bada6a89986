#ifndef GRASSGEO_GRASSMANNIAN_HPP
#define GRASSGEO_GRASSMANNIAN_HPP

#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/types.hpp"

namespace grassgeo {

/// Tangent vector at a projection q: a hermitian matrix fixed by the
/// tangent projector a -> aq - 2qaq + qa.
class TangentVector {
public:
  /// Validates hermiticity and membership in the tangent space (1e-10).
  static TangentVector from_matrix(const ProjectionPoint& q, const ComplexMatrix& m);
  static TangentVector trusted(ProjectionPoint q, ComplexMatrix m) {
    return TangentVector(std::move(q), std::move(m));
  }

  const ProjectionPoint& base() const { return base_; }
  const ComplexMatrix& matrix() const { return m_; }

private:
  TangentVector(ProjectionPoint q, ComplexMatrix m)
      : base_(std::move(q)), m_(std::move(m)) {}
  ProjectionPoint base_;
  ComplexMatrix m_;
};

/// The action u . q = u q u^*.
ProjectionPoint conjugate_by(const UnitaryMatrix& u, const ProjectionPoint& q);

/// Orthogonal projection of a hermitian matrix onto the tangent space at q:
/// a -> aq - 2qaq + qa. Idempotent and symmetric for the trace inner
/// product.
TangentVector tangent_project(const ProjectionPoint& q, const ComplexMatrix& a);

/// The unique q-codiagonal skew-hermitian z with zq - qz = v:
/// z = vq - qv.
SkewHermitian codiagonal_lift(const TangentVector& v);

/// Unitary w with w p w^* = q, from the polar factor of
/// s = qp + (1-q)(1-p). Requires ||p - q|| < 1.
UnitaryMatrix cross_section(const ProjectionPoint& p, const ProjectionPoint& q);

/// Geodesic point e^{tz} q e^{-tz}. z must be q-codiagonal (residual within
/// 1e-8 relative, Frobenius); that is what makes the curve a geodesic.
ProjectionPoint grass_geodesic_eval(const ProjectionPoint& q, const SkewHermitian& z,
                                    double t);

/// The embedding S(q) = (2q - 1)(2p - 1) into the unitary group. Carries
/// geodesics through q to unitary geodesics at double speed:
/// S(e^{tz} q e^{-tz}) = e^{2tz} S(q).
UnitaryMatrix symmetry_embed(const ProjectionPoint& q, const ProjectionPoint& p);

/// Differential of the embedding at the base point of v: dS(v) = 2 v (2p-1);
/// twice an isometry for every Schatten norm.
ComplexMatrix symmetry_embed_differential(const TangentVector& v,
                                          const ProjectionPoint& p);

/// The two-projection decomposition of the ambient space: the four
/// intersection subspaces, the generic part, the angle operator and the
/// pairing isometry between ker q0 ∩ ran q1 and ran q0 ∩ ker q1.
struct SubspaceSplit {
  RectMatrix h00;  // ker q0 ∩ ker q1
  RectMatrix h01;  // ker q0 ∩ ran q1
  RectMatrix h10;  // ran q0 ∩ ker q1
  RectMatrix h11;  // ran q0 ∩ ran q1
  /// Generic part, columns [xi_1..xi_g, eta_1..eta_g]: the xi span
  /// ran q0 ∩ H0, each eta_i is the partner of xi_i inside ker q0.
  RectMatrix h0;
  /// Hermitian positive angle operator on the half-generic block;
  /// diag(theta_1..theta_g) in the stored basis, spectrum in (0, pi/2).
  RectMatrix angle_operator;
  /// Maps H10 coordinates to H01 coordinates; the identity in the stored
  /// (deterministically matched) bases.
  RectMatrix pairing_isometry;
};

/// Numerical intersection subspaces via null spaces of stacked projectors
/// (singular-value threshold 1e-8). Requires rank(q0) = rank(q1).
SubspaceSplit subspace_split(const ProjectionPoint& q0, const ProjectionPoint& q1);

enum class GeodesicBranch {
  kHalfLog,          // "A": z = (1/2) log(eps_{q1} eps_{q0}), ||q0 - q1|| < 1
  kPrincipalAngles,  // "B": assembled from the subspace split
};

inline const char* branch_name(GeodesicBranch b) {
  return b == GeodesicBranch::kHalfLog ? "A" : "B";
}

struct GrassLog {
  SkewHermitian direction;
  GeodesicBranch branch;
};

/// Boundary-value solver: q0-codiagonal z with ||z|| <= pi/2 and
/// e^z q0 e^{-z} = q1. Unique (branch A) when ||q0 - q1|| < 1; at distance
/// one the swap block forces ||z|| = pi/2 and the minimizer is one among
/// many (branch B, determinized pairing).
GrassLog grass_log_bv(const ProjectionPoint& q0, const ProjectionPoint& q1);

/// The principal-angle construction behind branch B, valid for every
/// equal-rank pair; used as the independent cross-check of branch A.
SkewHermitian grass_log_principal(const ProjectionPoint& q0, const ProjectionPoint& q1);

/// Geodesic distance ||grass_log_bv(q0, q1)||_2.
double grass_distance(const ProjectionPoint& q0, const ProjectionPoint& q1);

}  // namespace grassgeo

#endif
