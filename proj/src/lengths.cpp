#include "grassgeo/lengths.hpp"

#include <cmath>

#include "grassgeo/errors.hpp"
#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/spectral.hpp"

namespace grassgeo {

namespace {

void require_projection_matrix(const ComplexMatrix& p, const char* where) {
  const int n = p.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(p(i, j) - std::conj(p(j, i))) > 2e-8)
        throw InvalidInput(std::string(where) + ": part is not hermitian");
  if ((p * p - p).max_abs() > 1e-8)
    throw InvalidInput(std::string(where) + ": part is not idempotent");
}

// Eigenvalues of a positive (within drift) hermitian matrix, clamped at 0.
// A negative eigenvalue below -1e-12 (relative) rejects the input.
std::vector<double> positive_spectrum(const ComplexMatrix& a, const char* where) {
  std::vector<double> vals = herm_eigenvalues(a);
  const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
  if (vals.front() < -1e-12 * std::max(scale, 1.0))
    throw InvalidInput(std::string(where) + ": matrix is not positive semidefinite");
  for (double& v : vals) v = std::max(v, 0.0);
  return vals;
}

double trace_power(const std::vector<double>& spectrum, double r) {
  double acc = 0.0;
  for (double v : spectrum) acc += std::pow(v, r);
  return acc;
}

}  // namespace

void validate_curve(const DiscretizedCurve& c) {
  if (c.points.size() < 2) throw InvalidInput("curve: needs at least two samples");
  if (c.times.size() != c.points.size())
    throw InvalidInput("curve: times/points size mismatch");
  if (std::abs(c.times.front()) > 1e-12 || std::abs(c.times.back() - 1.0) > 1e-12)
    throw InvalidInput("curve: times must span [0, 1]");
  for (std::size_t j = 1; j < c.times.size(); ++j)
    if (!(c.times[j] > c.times[j - 1]))
      throw InvalidInput("curve: times must be strictly increasing");
  const int n = c.points.front().dim();
  for (const ComplexMatrix& pt : c.points) {
    if (pt.dim() != n) throw InvalidInput("curve: points have mixed dimensions");
    if (c.kind == CurveKind::kUnitary) {
      ComplexMatrix g(n);
      matmul_adjoint_lhs(pt, pt, g);
      for (int i = 0; i < n; ++i) g(i, i) -= 1.0;
      if (g.max_abs() > 1e-8) throw InvalidInput("curve: point is not unitary");
    } else {
      if ((pt - pt.adjoint()).max_abs() > 1e-8)
        throw InvalidInput("curve: point is not hermitian");
      if ((pt * pt - pt).max_abs() > 1e-8)
        throw InvalidInput("curve: point is not idempotent");
    }
  }
}

double curve_length(const DiscretizedCurve& c, double k) {
  if (std::isnan(k) || k < 1.0) throw InvalidInput("curve_length: k must be >= 1");
  if (c.points.size() < 2) throw InvalidInput("curve_length: needs at least two samples");
  if (c.times.size() != c.points.size())
    throw InvalidInput("curve_length: times/points size mismatch");
  const int n = c.points.front().dim();
  ComplexMatrix diff(n);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < c.points.size(); ++j) {
    const ComplexMatrix& lo = c.points[j];
    const ComplexMatrix& hi = c.points[j + 1];
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) diff(r, col) = hi(r, col) - lo(r, col);
    total += schatten_norm(diff, k);
  }
  return total;
}

double jensen_compression_slack(const ComplexMatrix& p, const ComplexMatrix& a, double r) {
  if (std::isnan(r) || r < 1.0)
    throw InvalidInput("jensen_compression_slack: r must be >= 1");
  if (p.dim() != a.dim()) throw InvalidInput("jensen_compression_slack: dimension mismatch");
  require_projection_matrix(p, "jensen_compression_slack");
  const double rank = p.trace().real();
  if (rank < 0.5) throw InvalidInput("jensen_compression_slack: p must have rank >= 1");
  positive_spectrum(a, "jensen_compression_slack");  // PSD gate on a

  const ComplexMatrix pap = p * a * p;
  const std::vector<double> spec = positive_spectrum(pap, "jensen_compression_slack");
  const double tr_pap = std::max(pap.trace().real(), 0.0);
  const double rank_int = std::round(rank);
  return std::pow(rank_int, r - 1.0) * trace_power(spec, r) - std::pow(tr_pap, r);
}

double jensen_pinch_slack(const ComplexMatrix& a, const std::vector<ComplexMatrix>& parts,
                          double r) {
  if (std::isnan(r) || r < 1.0) throw InvalidInput("jensen_pinch_slack: r must be >= 1");
  if (parts.empty()) throw InvalidInput("jensen_pinch_slack: empty partition");
  const int n = a.dim();
  ComplexMatrix sum(n);
  for (const ComplexMatrix& p : parts) {
    if (p.dim() != n) throw InvalidInput("jensen_pinch_slack: dimension mismatch");
    require_projection_matrix(p, "jensen_pinch_slack");
    sum += p;
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if ((parts[i] * parts[j]).max_abs() > 1e-8)
        throw InvalidInput("jensen_pinch_slack: parts are not pairwise orthogonal");
  for (int i = 0; i < n; ++i) sum(i, i) -= 1.0;
  if (sum.max_abs() > 1e-8)
    throw InvalidInput("jensen_pinch_slack: parts do not sum to the identity");

  const std::vector<double> spec_a = positive_spectrum(a, "jensen_pinch_slack");
  double pinched = 0.0;
  for (const ComplexMatrix& p : parts) {
    const ComplexMatrix pap = p * a * p;
    pinched += trace_power(positive_spectrum(pap, "jensen_pinch_slack"), r);
  }
  return trace_power(spec_a, r) - pinched;
}

double minkowski_slack(const std::vector<std::vector<double>>& samples, double k) {
  if (std::isnan(k) || std::isinf(k) || k < 1.0)
    throw InvalidInput("minkowski_slack: k must be finite and >= 1");
  if (samples.empty()) throw InvalidInput("minkowski_slack: no functions");
  const std::size_t grid = samples.front().size();
  if (grid < 2) throw InvalidInput("minkowski_slack: need at least two grid points");
  for (const auto& f : samples) {
    if (f.size() != grid) throw InvalidInput("minkowski_slack: ragged sample grid");
    for (double v : f)
      if (std::isnan(v) || v < 0.0)
        throw InvalidInput("minkowski_slack: negative sample");
  }
  const double h = 1.0 / static_cast<double>(grid - 1);
  auto weight = [&](std::size_t j) {
    return (j == 0 || j + 1 == grid) ? 0.5 * h : h;
  };

  double lhs = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    double acc = 0.0;
    for (const auto& f : samples) acc += std::pow(f[j], k);
    lhs += weight(j) * std::pow(acc, 1.0 / k);
  }
  double rhs_acc = 0.0;
  for (const auto& f : samples) {
    double integral = 0.0;
    for (std::size_t j = 0; j < grid; ++j) integral += weight(j) * f[j];
    rhs_acc += std::pow(integral, k);
  }
  return lhs - std::pow(rhs_acc, 1.0 / k);
}

}  // namespace grassgeo
