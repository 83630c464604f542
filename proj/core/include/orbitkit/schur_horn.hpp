#ifndef ORBITKIT_SCHUR_HORN_HPP
#define ORBITKIT_SCHUR_HORN_HPP

#include <utility>
#include <vector>

#include "orbitkit/linalg.hpp"
#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Nonnegative matrix whose rows and columns each sum to 1 within 1e-10.
/// Entries are clamped from [-1e-12, 1+1e-12] into [0, 1] at construction.
class DoublyStochasticMatrix {
public:
    DoublyStochasticMatrix(int n, std::vector<double> entries);

    int dim() const { return n_; }
    double at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& entries() const { return a_; }

private:
    int n_;
    std::vector<double> a_;
};

/// Convex combination of permutation matrices reproducing a doubly
/// stochastic matrix; at most (n-1)^2 + 1 terms.
struct BirkhoffDecomposition {
    std::vector<std::pair<double, Permutation>> terms;

    double weight_sum() const;
    /// Sum of weight * permutation-matrix, for reconstruction checks.
    std::vector<double> reconstruct(int n) const;
};

/// Entrywise |u_ij|^2 of a unitary; always doubly stochastic.
DoublyStochasticMatrix unistochastic(const UnitaryMatrix& u);

/// v majorized by lam: equal sums and descending partial-sum dominance,
/// both within 1e-9. Characterizes membership in the permutohedron of lam.
bool is_majorized(const std::vector<double>& v, const Spectrum& lam);

/// Greedy matching-and-subtract decomposition (constructive Birkhoff-von
/// Neumann). Throws NumericalError if no perfect matching exists on the
/// positive support, which indicates the input violates its tolerance.
BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& q);

/// Horn construction: unitary U (a product of at most n-1 two-coordinate
/// rotations) with diag(U diag(lam) U*) = v. Requires is_majorized(v, lam).
UnitaryMatrix horn_construct(const std::vector<double>& v, const Spectrum& lam);

struct OrbitLinearMinimum {
    double value;
    Permutation argperm; // <sigma.lam, z> attains value; lexicographically
                         // smallest mapping among optimal permutations
};

/// min over U(n) of <U diag(lam) U*, diag(z)>, reduced to S_n: pairs
/// ascending lam with descending z.
OrbitLinearMinimum min_orbit_linear(const Spectrum& lam, const std::vector<double>& z);

struct MinEigenvalue {
    double value;
    std::vector<cplx> witness; // unit eigenvector
};

/// Smallest eigenvalue and a unit witness vector with w* A w = value.
MinEigenvalue min_eigenvalue(const HermitianMatrix& a);

} // namespace orbitkit

#endif
