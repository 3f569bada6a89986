#ifndef GRASSGEO_MATRIX_OPS_HPP
#define GRASSGEO_MATRIX_OPS_HPP

#include "grassgeo/complex_matrix.hpp"
#include "grassgeo/spectral.hpp"
#include "grassgeo/types.hpp"

namespace grassgeo {

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// Operator norm of a hermitian matrix (max |eigenvalue|); cheaper and more
/// accurate than the general route.
double hermitian_operator_norm(const ComplexMatrix& a);

/// Operator norm of a skew-hermitian direction.
double skew_operator_norm(const SkewHermitian& x);

/// Unitary factor w of the polar decomposition g = w |g|, by scaled Newton
/// iteration. Requires the smallest singular value to exceed
/// 1e-12 * ||g||; throws SingularInput otherwise.
UnitaryMatrix polar_unitary(const ComplexMatrix& g);

/// e^x for skew-hermitian x, via the spectral decomposition of the
/// hermitian matrix -i x.
UnitaryMatrix expm_skew(const SkewHermitian& x);

/// Skew-hermitian logarithm with eigen-angles in (-pi, pi]; the branch at
/// eigenvalue -1 is fixed to +pi. ||result|| <= pi always, and for
/// ||u - 1|| < 2 this is the unique skew log of norm < pi.
SkewHermitian logm_unitary(const UnitaryMatrix& u);

/// Schatten k-norm (sum of k-th powers of singular values)^(1/k);
/// k = infinity gives the operator norm. Requires k >= 1.
double schatten_norm(const ComplexMatrix& a, double k);

/// Trace inner product <a, b> = Tr(b^* a).
cplx trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

namespace detail {

/// e^m for an exactly skew-hermitian matrix, written into out (same dim);
/// allocation-free via thread-local workspace. The typed expm_skew wraps
/// this; samplers call it directly in their inner loops.
void expm_skew_into(const ComplexMatrix& skew, ComplexMatrix& out);

}  // namespace detail

}  // namespace grassgeo

#endif
