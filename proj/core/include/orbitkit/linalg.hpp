#ifndef ORBITKIT_LINALG_HPP
#define ORBITKIT_LINALG_HPP

#include <utility>
#include <vector>

#include "orbitkit/matrix.hpp"

namespace orbitkit {

struct EighResult {
    Spectrum eigenvalues;
    UnitaryMatrix eigenvectors; // columns; A = W diag(lambda) W*
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Eigenvalues ascending, eigenvector columns permuted to match.
/// Throws NumericalError if off-diagonal mass is not below 1e-13 * ||A||_F
/// after 50 sweeps.
EighResult eigh(const HermitianMatrix& a);

/// Determinant via partial-pivoted elimination. Singular inputs give 0.
cplx det_complex(const ComplexMatrix& m);

/// Signed log-magnitude determinant: returns (sign in {-1,0,+1}, log|det|).
/// Overflow-free form used by the partition-function ratios.
std::pair<int, double> det_sign_log(const ComplexMatrix& m);

/// prod_{i<j} (x_i - x_j). Empty and singleton inputs give 1.
double vandermonde(const std::vector<double>& x);

/// Tr(AB) for Hermitian A, B; the imaginary residual is checked
/// (<= 1e-12 * scale) and discarded.
double frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b);

} // namespace orbitkit

#endif
