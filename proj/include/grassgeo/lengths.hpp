#ifndef GRASSGEO_LENGTHS_HPP
#define GRASSGEO_LENGTHS_HPP

#include <vector>

#include "grassgeo/complex_matrix.hpp"

namespace grassgeo {

enum class CurveKind { kUnitary, kProjection };

/// Time grid plus matrix samples; the discrete model of a piecewise smooth
/// curve on [0, 1].
struct DiscretizedCurve {
  CurveKind kind;
  std::vector<double> times;          // strictly increasing, t0 = 0, tm = 1
  std::vector<ComplexMatrix> points;  // one per time, all the same dim
};

/// Full invariant check (grid shape plus the per-point unitary/projection
/// invariant at tolerance 1e-8). Samplers construct curves that satisfy
/// this by construction; JSON input goes through here.
void validate_curve(const DiscretizedCurve& c);

/// Chordal length sum_j ||points[j+1] - points[j]||_k: a parametrization-
/// independent lower Riemann approximation of the k-norm length functional.
/// k in [1, inf].
double curve_length(const DiscretizedCurve& c, double k);

/// Tr(p)^{r-1} Tr((pap)^r) - Tr(pap)^r for a positive a and a projection p
/// of rank >= 1 (the full projection is allowed). Nonnegative for r >= 1.
double jensen_compression_slack(const ComplexMatrix& p, const ComplexMatrix& a, double r);

/// Tr(a^r) - sum_j Tr((p_j a p_j)^r) for a resolution of identity {p_j};
/// nonnegative (pinching decreases trace powers), zero when a commutes
/// with every p_j.
double jensen_pinch_slack(const ComplexMatrix& a, const std::vector<ComplexMatrix>& parts,
                          double r);

/// Trapezoid discretization of the integral Minkowski inequality
/// int (sum_i f_i^k)^{1/k} >= (sum_i (int f_i)^k)^{1/k} on [0, 1];
/// returns LHS - RHS. samples[i][j] = f_i(t_j) on a uniform grid, all >= 0.
double minkowski_slack(const std::vector<std::vector<double>>& samples, double k);

}  // namespace grassgeo

#endif
