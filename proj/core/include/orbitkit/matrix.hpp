#ifndef ORBITKIT_MATRIX_HPP
#define ORBITKIT_MATRIX_HPP

#include <complex>
#include <vector>

#include "orbitkit/errors.hpp"

namespace orbitkit {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12; // relative to max |entry|
inline constexpr double kUnitaryTol = 1e-10;   // absolute on |UU* - I|
inline constexpr double kDistinctTol = 1e-8;   // absolute on consecutive gaps

/// Dense square complex matrix, row-major. Immutable users treat it as a
/// value type; mutation is only for construction.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int n);
    ComplexMatrix(int n, std::vector<cplx> entries);

    static ComplexMatrix identity(int n);

    int dim() const { return n_; }
    cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }

    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix adjoint() const;
    ComplexMatrix multiply(const ComplexMatrix& rhs) const;

private:
    int n_;
    std::vector<cplx> a_;
};

/// n x n matrix with A = A*. Construction enforces the invariant
/// (max deviation <= kHermitianTol * max|A|) and finiteness.
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m);

    static HermitianMatrix diagonal(const std::vector<double>& d);
    static HermitianMatrix zero(int n);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& at(int i, int j) const { return m_.at(i, j); }

    std::vector<double> real_diagonal() const;

private:
    ComplexMatrix m_;
};

/// n x n matrix with UU* = I within kUnitaryTol.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix m);

    static UnitaryMatrix identity(int n);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& at(int i, int j) const { return m_.at(i, j); }

    /// U A U* for Hermitian A (result symmetrized to kill FP drift).
    HermitianMatrix conjugate(const HermitianMatrix& a) const;

private:
    ComplexMatrix m_;
};

/// Sorted (ascending) real eigenvalue vector with distinctness metadata.
/// The constructor canonicalizes: input order does not matter.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values);

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

    double min_gap() const { return min_gap_; }
    bool distinct() const { return min_gap_ > kDistinctTol; }
    double sum() const;
    double spread() const { return v_.back() - v_.front(); }

private:
    std::vector<double> v_;
    double min_gap_;
};

/// Permutation of {0..n-1} with its sign. mapping[i] is the image of i.
class Permutation {
public:
    explicit Permutation(std::vector<int> mapping);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(map_.size()); }
    int operator[](int i) const { return map_[i]; }
    const std::vector<int>& mapping() const { return map_; }
    int sign() const { return sign_; }

    /// (sigma . v)[i] = v[mapping[i]].
    std::vector<double> apply(const std::vector<double>& v) const;

private:
    std::vector<int> map_;
    int sign_;
};

} // namespace orbitkit

#endif
