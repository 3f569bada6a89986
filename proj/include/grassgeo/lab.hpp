#ifndef GRASSGEO_LAB_HPP
#define GRASSGEO_LAB_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "grassgeo/grassmannian.hpp"
#include "grassgeo/lengths.hpp"
#include "grassgeo/rng.hpp"
#include "grassgeo/types.hpp"
#include "grassgeo/unitary_group.hpp"

namespace grassgeo::lab {

/// One minimality trial: the solved geodesic against its best competitor.
struct TrialReport {
  std::uint64_t seed;  // per-trial substream seed
  int dim = 0;
  int rank = 0;
  double k = 2.0;
  GeodesicBranch branch = GeodesicBranch::kHalfLog;
  double geodesic_length = 0.0;
  double best_competitor_length = 0.0;
  double margin = 0.0;  // best_competitor_length - geodesic_length
  double endpoint_error = 0.0;
};

struct ExperimentReport {
  std::vector<TrialReport> trials;
  /// Discretization tolerance: twice the largest observed defect of the
  /// sampled geodesic against its closed-form length.
  double tol_disc = 0.0;

  double min_margin() const;
  /// Fraction of trials with strictly positive margin.
  double positive_margin_fraction() const;
  bool all_margins_within_tolerance() const { return min_margin() >= -tol_disc; }
};

/// Haar-like unitary: polar factor of a complex Gaussian matrix.
UnitaryMatrix random_unitary(CounterRng& rng, int dim);
/// Random rank-r projection: conjugate of the coordinate projection.
ProjectionPoint random_projection(CounterRng& rng, int dim, int rank);
/// Gaussian skew-hermitian direction.
SkewHermitian random_skew(CounterRng& rng, int dim);

enum class PairMode { kGeneric, kBoundary };

/// Generic mode draws independent rank-r projections until ||q0-q1|| < 1;
/// boundary mode plants at least one orthogonal-swap block (plus optional
/// generic angles and fixed directions) and conjugates by a common Haar
/// unitary, so that ||q0-q1|| = 1 exactly. Deterministic per seed.
std::pair<ProjectionPoint, ProjectionPoint> random_projection_pair(int dim, int rank,
                                                                   PairMode mode,
                                                                   std::uint64_t seed);

/// Endpoint-exact competitor: samples of e^{w(t)} q0 e^{-w(t)} with
/// w(t) = t z + amplitude sin(pi t) y at m+1 uniform times. Every sample is
/// a conjugate of q0, and w(1) = z holds bitwise.
DiscretizedCurve competitor_curve(const ProjectionPoint& q0, const SkewHermitian& z,
                                  const SkewHermitian& y, double amplitude, int m);

/// The geodesic itself on the same grid (amplitude-zero competitor).
DiscretizedCurve sample_grass_geodesic(const ProjectionPoint& q0, const SkewHermitian& z,
                                       int m);

/// Unitary-group analogue through the identity: e^{t x + amplitude sin(pi t) y}.
DiscretizedCurve unitary_competitor_curve(const SkewHermitian& x, const SkewHermitian& y,
                                          double amplitude, int m);

/// Per trial: draw a generic pair, solve the boundary-value problem, and
/// race the geodesic against random endpoint-matched competitors in the
/// k-norm. Trials run in parallel; reports merge in seed order.
ExperimentReport minimality_experiment(int dim, int rank, double k, int trials,
                                       int competitors_per_trial, int m, double amplitude,
                                       std::uint64_t seed);

/// Unitary-group minimality: directions with ||x|| <= pi against perturbed
/// exponentials joining 1 to e^x, measured in the 2-norm.
ExperimentReport unitary_minimality_experiment(int dim, int trials,
                                               int competitors_per_trial, int m,
                                               double amplitude, std::uint64_t seed);

/// Checks sqrt(1 - pi^2/12) d2(u,v) <= ||u-v||_2 <= d2(u,v) on random pairs.
struct SandwichReport {
  int dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double min_lower_slack = 0.0;  // min over pairs of ||u-v||_2 - c d2
  double min_upper_slack = 0.0;  // min over pairs of d2 - ||u-v||_2
};

SandwichReport metric_sandwich_experiment(int dim, int trials, std::uint64_t seed);

/// sqrt(1 - pi^2/12), the lower sandwich constant.
double sandwich_lower_constant();

}  // namespace grassgeo::lab

#endif
