#ifndef ORBITKIT_HCIZ_HPP
#define ORBITKIT_HCIZ_HPP

#include <vector>

#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Length n-1 ascending vector weakly interlacing a parent spectrum:
/// lam_i <= a_i <= lam_{i+1}. Validated at construction.
class InterlacingVector {
public:
    InterlacingVector(std::vector<double> values, Spectrum parent);

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }
    const Spectrum& parent() const { return parent_; }

private:
    std::vector<double> v_;
    Spectrum parent_;
};

/// Weak interlacing test with 1e-12-relative slack on the boundaries.
bool interlaces(const std::vector<double>& a, const Spectrum& lam);

/// The unitary-group exponential orbit integral
///   integral over U(n) of exp(-<diag(y), U diag(lam) U*>_F)
///   = (prod_{p<n} p!) det([exp(-y_i lam_j)]) / prod_{i<j} -(y_i-y_j)(lam_i-lam_j).
/// Symmetric in (y, lam), equals 1 at y = 0, strictly positive. Spectra
/// with gaps below 1e-6 of their spread take the confluent
/// divided-difference path, so the value is continuous in both arguments.
double hciz_det(const Spectrum& y, const Spectrum& lam);

/// Same value through the signed symmetric-group sum
///   (prod p!) sum_sigma sign(sigma) exp(-<y, sigma.lam>) / (same denominator).
/// Requires strictly distinct spectra and n <= 9.
double hciz_weyl_sum(const Spectrum& y, const Spectrum& lam);

/// Density of the minor spectrum of a uniformly random orbit point on the
/// interlacing box: (n-1)! |V_{n-1}(a)| / |V_n(lam)|. Requires distinct lam.
double baryshnikov_density(const InterlacingVector& a, const Spectrum& lam);

/// Quadrature oracle for the recursive minor-integration identity:
/// integrates the (n-1)-dimensional orbit integral against the minor
/// density with tensor-product Gauss-Legendre, down to the n=1 base case.
/// n <= 3 (cost grows as quad_points^(n(n-1)/2)); distinct spectra.
double hciz_via_induction(const Spectrum& y, const Spectrum& lam, int quad_points);

} // namespace orbitkit

#endif
