#ifndef GRASSGEO_SPECTRAL_HPP
#define GRASSGEO_SPECTRAL_HPP

#include <functional>
#include <vector>

#include "grassgeo/complex_matrix.hpp"
#include "grassgeo/types.hpp"

namespace grassgeo {

/// Spectral decomposition a = V diag(values) V^* of a hermitian matrix.
struct EigenSystem {
  std::vector<double> values;  // ascending
  UnitaryMatrix vectors;       // columns are eigenvectors
};

/// Hermitian eigendecomposition by cyclic two-sided Jacobi rotations.
/// Off-diagonal threshold 1e-13 * ||a||_F, cap 100 sweeps.
/// Requires ||a - a^*|| <= 1e-10 * ||a|| (operator norms).
EigenSystem herm_eig(const ComplexMatrix& a);

/// Eigenvalues only (ascending); skips the eigenvector accumulation.
std::vector<double> herm_eigenvalues(const ComplexMatrix& a);

/// Joint spectral decomposition of a commuting hermitian pair.
struct CommutingEigenSystem {
  std::vector<double> first_values;
  std::vector<double> second_values;
  UnitaryMatrix vectors;
};

/// Simultaneous diagonalization of two commuting hermitian matrices by
/// cyclic Jacobi rotations chosen to maximize the joint diagonal gain.
/// The pair must commute (up to roundoff) for the sweep cap to be reached.
CommutingEigenSystem commuting_herm_eig(const ComplexMatrix& h, const ComplexMatrix& s);

/// Functional calculus V f(diag) V^*. Eigenvalues closer than 1e-10
/// (relative to the spectral radius) form a cluster and f is evaluated at
/// the cluster mean.
ComplexMatrix apply_spectral(const EigenSystem& es, const std::function<cplx(double)>& f);

/// Groups ascending values into clusters at relative gap tolerance and
/// replaces each member by its cluster mean. Exposed for reuse by the
/// unitary log and the spectral-direction extraction.
void cluster_to_means(std::vector<double>& ascending_values, double rel_tol);

namespace detail {

/// Engine behind herm_eig: input is symmetrized on entry, no hermiticity
/// precondition. vectors may be null to skip accumulation.
void jacobi_hermitian(const ComplexMatrix& a, std::vector<double>& values,
                      ComplexMatrix* vectors);

/// Allocation-free core: a (row-major n*n) is overwritten and must already
/// be hermitian; v, when non-null, must hold the identity on entry and
/// accumulates the eigenvector columns. values come out unsorted.
void jacobi_hermitian_raw(int n, cplx* a, cplx* v, double* values);

void jacobi_commuting_pair(const ComplexMatrix& h, const ComplexMatrix& s,
                           std::vector<double>& h_values, std::vector<double>& s_values,
                           ComplexMatrix& vectors);

/// One-sided Jacobi core: orthogonalizes the columns of b (column-major,
/// rows x cols, destroyed) by right rotations; v, when non-null, must hold
/// the cols x cols identity and accumulates the right factor. Column norms
/// of the result are the singular values, accurate even when tiny.
void hestenes_raw(int rows, int cols, cplx* b, cplx* v);

/// One-sided Jacobi SVD; returns singular values (descending) and the right
/// factor v with a = u diag(s) v^*. Accurate for tiny singular values, which
/// is what the subspace-intersection thresholds rely on.
struct RightSvd {
  std::vector<double> singular_values;
  RectMatrix v;
};
RightSvd jacobi_svd_right(const RectMatrix& a);

/// Orthonormal basis of the numerical null space: right singular vectors
/// with singular value <= threshold, each phase-normalized so its first
/// significant coordinate is real positive.
RectMatrix null_space(const RectMatrix& a, double threshold);

/// Inverse via LU with partial pivoting. Optionally reports log|det|.
ComplexMatrix lu_inverse(const ComplexMatrix& a, double* log_abs_det);

}  // namespace detail

}  // namespace grassgeo

#endif
