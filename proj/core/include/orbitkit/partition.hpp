#ifndef ORBITKIT_PARTITION_HPP
#define ORBITKIT_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "orbitkit/divided_difference.hpp"
#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Exact reduced fraction with 64-bit parts. Enough for the desk-scale
/// moment formulas (factorial arguments <= 20).
class Rational {
public:
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    long long num_;
    long long den_;
};

/// Vector of nonnegative integer exponents with its total degree.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> exponents);

    int size() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[i]; }
    const std::vector<int>& exponents() const { return e_; }
    int degree() const { return degree_; }

private:
    std::vector<int> e_;
    int degree_;
};

/// Sphere moment of |v|^(2 alpha): prod alpha_i! (n-1)! / (d+n-1)!.
/// Exact mode; throws DomainError when d+n-1 > 20 (use the _real form).
Rational bombieri_moment(const MultiIndex& alpha);

/// Log-gamma evaluation of the same moment, valid at any size.
double bombieri_moment_real(const MultiIndex& alpha);

/// Uniform-probability simplex moment of x^m; equal to bombieri_moment by
/// the diagonal-pushforward identity. Same contract.
Rational simplex_monomial_integral(const MultiIndex& m);
double simplex_monomial_integral_real(const MultiIndex& m);

/// Exponential partition function of the rank-1 projection orbit:
///   integral of exp(-<diag(lam), X>) over trace-1 rank-1 projections
///   = (n-1)! * sum_i exp(-lam_i) / prod_{j != i} (lam_j - lam_i),
/// evaluated through the confluent divided difference so repeated
/// eigenvalues take the limit value. Strictly positive.
double partition_p1(const Spectrum& lam);

/// Gradient of -log partition_p1; equals the mean diagonal E[diag X]
/// under the exponential density, so entries are nonnegative and sum to 1.
std::vector<double> log_partition_gradient(const Spectrum& lam);

} // namespace orbitkit

#endif
