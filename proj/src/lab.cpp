#include "grassgeo/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "grassgeo/errors.hpp"
#include "grassgeo/spectral.hpp"

namespace grassgeo::lab {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix random_gaussian_matrix(CounterRng& rng, int dim) {
  ComplexMatrix g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.next_complex_gaussian();
  return g;
}

// Runs fn(trial_index) over [0, count) on a small thread pool; exceptions
// propagate, results land in caller-owned slots so merge order is fixed.
template <typename Fn>
void parallel_trials(int count, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

double ExperimentReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const TrialReport& t : trials) m = std::min(m, t.margin);
  return m;
}

double ExperimentReport::positive_margin_fraction() const {
  if (trials.empty()) return 0.0;
  int positive = 0;
  for (const TrialReport& t : trials)
    if (t.margin > 0.0) ++positive;
  return static_cast<double>(positive) / static_cast<double>(trials.size());
}

UnitaryMatrix random_unitary(CounterRng& rng, int dim) {
  return polar_unitary(random_gaussian_matrix(rng, dim));
}

ProjectionPoint random_projection(CounterRng& rng, int dim, int rank) {
  const UnitaryMatrix u = random_unitary(rng, dim);
  return conjugate_by(u, ProjectionPoint::coordinate(dim, rank));
}

SkewHermitian random_skew(CounterRng& rng, int dim) {
  return SkewHermitian::skew_projection(random_gaussian_matrix(rng, dim));
}

std::pair<ProjectionPoint, ProjectionPoint> random_projection_pair(int dim, int rank,
                                                                   PairMode mode,
                                                                   std::uint64_t seed) {
  if (rank <= 0 || rank >= dim)
    throw InvalidInput("random_projection_pair: need 0 < rank < dim");
  CounterRng rng(seed);
  if (mode == PairMode::kGeneric) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      ProjectionPoint q0 = random_projection(rng, dim, rank);
      ProjectionPoint q1 = random_projection(rng, dim, rank);
      const double dist = hermitian_operator_norm(q0.matrix() - q1.matrix());
      if (dist < 1.0 - 1e-12) return {std::move(q0), std::move(q1)};
    }
    throw NumericalFailure("random_projection_pair: could not sample a generic pair");
  }

  // Boundary mode: plant swap directions (angle pi/2), optional generic
  // angles, and aligned directions, then conjugate both by one Haar unitary.
  const int max_swap = std::min(rank, dim - rank);
  const int swap = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_swap));
  const int max_generic = std::min(rank - swap, dim - rank - swap);
  const int generic =
      max_generic > 0
          ? static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_generic + 1))
          : 0;

  ComplexMatrix q1m(dim);
  // swapped block: ran q1 picks kernel directions of q0
  for (int j = 0; j < swap; ++j) q1m(rank + j, rank + j) = 1.0;
  // generic block: cos/sin mixtures of e_{swap+j} (range) and
  // e_{rank+swap+j} (kernel)
  for (int j = 0; j < generic; ++j) {
    const double theta = 0.2 + rng.next_uniform();  // within (0, pi/2)
    const double c = std::cos(theta), s = std::sin(theta);
    const int r = swap + j;
    const int kq = rank + swap + j;
    q1m(r, r) += c * c;
    q1m(r, kq) += c * s;
    q1m(kq, r) += c * s;
    q1m(kq, kq) += s * s;
  }
  // aligned block: shared range directions
  for (int j = swap + generic; j < rank; ++j) q1m(j, j) = 1.0;

  const UnitaryMatrix u = random_unitary(rng, dim);
  ProjectionPoint q0 = conjugate_by(u, ProjectionPoint::coordinate(dim, rank));
  ProjectionPoint q1 = conjugate_by(u, ProjectionPoint::trusted(std::move(q1m), rank));
  return {std::move(q0), std::move(q1)};
}

DiscretizedCurve competitor_curve(const ProjectionPoint& q0, const SkewHermitian& z,
                                  const SkewHermitian& y, double amplitude, int m) {
  if (m < 2) throw InvalidInput("competitor_curve: m must be >= 2");
  if (z.dim() != q0.dim() || y.dim() != q0.dim())
    throw InvalidInput("competitor_curve: dimension mismatch");
  DiscretizedCurve curve;
  curve.kind = CurveKind::kProjection;
  curve.times.reserve(m + 1);
  curve.points.reserve(m + 1);
  const ComplexMatrix& zm = z.matrix();
  const ComplexMatrix& ym = y.matrix();
  const ComplexMatrix& q0m = q0.matrix();
  const int n = q0.dim();
  ComplexMatrix w(n), u(n), tmp(n);
  for (int j = 0; j <= m; ++j) {
    const double t = static_cast<double>(j) / m;
    const double bump = (j == 0 || j == m) ? 0.0 : amplitude * std::sin(kPi * t);
    // w stays exactly skew: real combinations of skew matrices
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) w(r, c) = t * zm(r, c) + bump * ym(r, c);
    detail::expm_skew_into(w, u);
    matmul(u, q0m, tmp);
    curve.times.push_back(t);
    curve.points.emplace_back(n);
    matmul_adjoint_rhs(tmp, u, curve.points.back());
  }
  return curve;
}

DiscretizedCurve sample_grass_geodesic(const ProjectionPoint& q0, const SkewHermitian& z,
                                       int m) {
  return competitor_curve(q0, z, SkewHermitian::zero(q0.dim()), 0.0, m);
}

DiscretizedCurve unitary_competitor_curve(const SkewHermitian& x, const SkewHermitian& y,
                                          double amplitude, int m) {
  if (m < 2) throw InvalidInput("unitary_competitor_curve: m must be >= 2");
  if (x.dim() != y.dim()) throw InvalidInput("unitary_competitor_curve: dimension mismatch");
  DiscretizedCurve curve;
  curve.kind = CurveKind::kUnitary;
  curve.times.reserve(m + 1);
  curve.points.reserve(m + 1);
  const int n = x.dim();
  const ComplexMatrix& xm = x.matrix();
  const ComplexMatrix& ym = y.matrix();
  ComplexMatrix w(n);
  for (int j = 0; j <= m; ++j) {
    const double t = static_cast<double>(j) / m;
    const double bump = (j == 0 || j == m) ? 0.0 : amplitude * std::sin(kPi * t);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) w(r, c) = t * xm(r, c) + bump * ym(r, c);
    curve.times.push_back(t);
    curve.points.emplace_back(n);
    detail::expm_skew_into(w, curve.points.back());
  }
  return curve;
}

ExperimentReport minimality_experiment(int dim, int rank, double k, int trials,
                                       int competitors_per_trial, int m, double amplitude,
                                       std::uint64_t seed) {
  if (std::isnan(k) || std::isinf(k) || k < 2.0)
    throw InvalidInput("minimality_experiment: k must lie in [2, inf)");
  if (trials < 1 || competitors_per_trial < 1)
    throw InvalidInput("minimality_experiment: need at least one trial and competitor");
  if (m < 2) throw InvalidInput("minimality_experiment: m must be >= 2");

  ExperimentReport report;
  report.trials.resize(trials);
  std::vector<double> defects(trials, 0.0);

  parallel_trials(trials, [&](int i) {
    const std::uint64_t trial_seed = CounterRng::derive(seed, static_cast<std::uint64_t>(i));
    const auto pair = random_projection_pair(
        dim, rank, PairMode::kGeneric, CounterRng::derive(trial_seed, 1));
    const ProjectionPoint& q0 = pair.first;
    const ProjectionPoint& q1 = pair.second;
    const GrassLog sol = grass_log_bv(q0, q1);

    const ProjectionPoint end = grass_geodesic_eval(q0, sol.direction, 1.0);
    const double endpoint_error = (end.matrix() - q1.matrix()).frobenius();

    const DiscretizedCurve geo = sample_grass_geodesic(q0, sol.direction, m);
    const double geo_len = curve_length(geo, k);
    const double closed_len = schatten_norm(sol.direction.matrix(), k);
    defects[i] = std::abs(closed_len - geo_len);

    CounterRng comp_rng(CounterRng::derive(trial_seed, 2));
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < competitors_per_trial; ++j) {
      const SkewHermitian y = random_skew(comp_rng, dim);
      const DiscretizedCurve gamma = competitor_curve(q0, sol.direction, y, amplitude, m);
      best = std::min(best, curve_length(gamma, k));
    }

    TrialReport& out = report.trials[i];
    out.seed = trial_seed;
    out.dim = dim;
    out.rank = rank;
    out.k = k;
    out.branch = sol.branch;
    out.geodesic_length = geo_len;
    out.best_competitor_length = best;
    out.margin = best - geo_len;
    out.endpoint_error = endpoint_error;
  });

  double max_defect = 0.0;
  for (double d : defects) max_defect = std::max(max_defect, d);
  report.tol_disc = std::max(2.0 * max_defect, 1e-12);
  return report;
}

ExperimentReport unitary_minimality_experiment(int dim, int trials,
                                               int competitors_per_trial, int m,
                                               double amplitude, std::uint64_t seed) {
  if (trials < 1 || competitors_per_trial < 1)
    throw InvalidInput("unitary_minimality_experiment: need at least one trial and competitor");
  if (m < 2) throw InvalidInput("unitary_minimality_experiment: m must be >= 2");

  ExperimentReport report;
  report.trials.resize(trials);
  std::vector<double> defects(trials, 0.0);

  parallel_trials(trials, [&](int i) {
    const std::uint64_t trial_seed = CounterRng::derive(seed, static_cast<std::uint64_t>(i));
    CounterRng rng(trial_seed);

    SkewHermitian x = SkewHermitian::zero(dim);
    double norm_inf = 0.0;
    do {  // reject degenerate zero directions
      x = random_skew(rng, dim);
      norm_inf = skew_operator_norm(x);
    } while (norm_inf == 0.0);
    const double target = (1.0 - rng.next_uniform()) * kPi;  // ||x|| in (0, pi]
    x = x.scaled(target / norm_inf);

    // Remark-style persistence bound: t ||x||_2 <= C_x pi holds on [0, 1]
    // whenever ||x|| <= pi; recorded as a guard.
    const double c_ratio = critical_ratio(x);
    const double norm_2 = schatten_norm(x.matrix(), 2.0);
    if (norm_2 > c_ratio * kPi + 1e-9)
      throw NumericalFailure("unitary_minimality_experiment: persistence bound violated");

    const DiscretizedCurve geo = unitary_competitor_curve(x, SkewHermitian::zero(dim), 0.0, m);
    const double geo_len = curve_length(geo, 2.0);
    defects[i] = std::abs(norm_2 - geo_len);

    const UnitaryMatrix endpoint = expm_skew(x);
    const double endpoint_error =
        (geo.points.back() - endpoint.matrix()).frobenius();

    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < competitors_per_trial; ++j) {
      const SkewHermitian y = random_skew(rng, dim);
      const DiscretizedCurve gamma = unitary_competitor_curve(x, y, amplitude, m);
      best = std::min(best, curve_length(gamma, 2.0));
    }

    TrialReport& out = report.trials[i];
    out.seed = trial_seed;
    out.dim = dim;
    out.rank = 0;
    out.k = 2.0;
    out.branch = GeodesicBranch::kHalfLog;
    out.geodesic_length = geo_len;
    out.best_competitor_length = best;
    out.margin = best - geo_len;
    out.endpoint_error = endpoint_error;
  });

  double max_defect = 0.0;
  for (double d : defects) max_defect = std::max(max_defect, d);
  report.tol_disc = std::max(2.0 * max_defect, 1e-12);
  return report;
}

double sandwich_lower_constant() { return std::sqrt(1.0 - kPi * kPi / 12.0); }

SandwichReport metric_sandwich_experiment(int dim, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("metric_sandwich_experiment: need at least one trial");
  SandwichReport report;
  report.dim = dim;
  report.trials = trials;
  report.seed = seed;
  std::vector<double> lower(trials), upper(trials);
  const double c_low = sandwich_lower_constant();

  parallel_trials(trials, [&](int i) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(i)));
    const UnitaryMatrix u = random_unitary(rng, dim);
    const UnitaryMatrix v = random_unitary(rng, dim);
    const double d2 = unitary_distance(u, v);
    const double chord = schatten_norm(u.matrix() - v.matrix(), 2.0);
    lower[i] = chord - c_low * d2;
    upper[i] = d2 - chord;
  });

  report.min_lower_slack = *std::min_element(lower.begin(), lower.end());
  report.min_upper_slack = *std::min_element(upper.begin(), upper.end());
  return report;
}

}  // namespace grassgeo::lab
