#pragma once

#include "fellb/types.hpp"

#include <utility>

namespace fellb {

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Sum of singular values (dual of the operator norm under the trace pairing).
double trace_norm(const ComplexMatrix& m);

RealVector singular_values(const ComplexMatrix& m);

/// Eigenvalues of the Hermitian part (ascending).
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// True iff m is Hermitian and positive semidefinite up to tol*(1+||m||).
bool psd_check(const ComplexMatrix& m, double tol = tol::membership);

struct PolarDecomposition {
  ComplexMatrix partial_isometry;  // U, supported on range(P)
  ComplexMatrix psd;               // P = (m† m)^{1/2}
};

/// m = U P with P PSD and U a partial isometry onto range(m).
PolarDecomposition polar_decompose(const ComplexMatrix& m);

/// PSD square root of a Hermitian PSD matrix (negative ripples clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

}  // namespace fellb
