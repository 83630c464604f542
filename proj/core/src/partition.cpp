#include "orbitkit/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "orbitkit/errors.hpp"

namespace orbitkit {

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw DomainError("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    if (e_.empty()) throw DomainError("MultiIndex: empty");
    degree_ = 0;
    for (int x : e_) {
        if (x < 0) throw DomainError("MultiIndex: negative exponent");
        degree_ += x;
    }
}

namespace {

long long factorial_ll(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

Rational bombieri_moment(const MultiIndex& alpha) {
    const int n = alpha.size();
    const int d = alpha.degree();
    if (d + n - 1 > 20) {
        std::ostringstream os;
        os << "bombieri_moment: factorial argument " << d + n - 1
           << " exceeds exact-mode cap 20; use bombieri_moment_real";
        throw DomainError(os.str());
    }
    // numerator <= denominator <= 20! so both fit in 64 bits
    long long num = factorial_ll(n - 1);
    for (int i = 0; i < n; ++i) num *= factorial_ll(alpha[i]);
    return Rational(num, factorial_ll(d + n - 1));
}

double bombieri_moment_real(const MultiIndex& alpha) {
    const int n = alpha.size();
    const int d = alpha.degree();
    double lg = std::lgamma(static_cast<double>(n)); // (n-1)!
    for (int i = 0; i < n; ++i) lg += std::lgamma(alpha[i] + 1.0);
    lg -= std::lgamma(static_cast<double>(d + n));
    return std::exp(lg);
}

Rational simplex_monomial_integral(const MultiIndex& m) { return bombieri_moment(m); }

double simplex_monomial_integral_real(const MultiIndex& m) { return bombieri_moment_real(m); }

double partition_p1(const Spectrum& lam) {
    const int n = lam.size();
    const double c = lam[0];
    if (std::abs(c) > 700.0)
        throw OverflowError("partition_p1: |min eigenvalue| > 700 overflows exp(); apply the "
                            "shift identity Z(lam) = exp(-s) * Z(lam - s*1) first");
    std::vector<double> shifted = lam.values();
    for (double& x : shifted) x -= c;

    double fact = 1.0;
    for (int k = 2; k < n; ++k) fact *= k;
    const double value = std::exp(-c) * fact * dd::dd_exp(shifted, 1.0);
    if (!(value > 0.0) || !std::isfinite(value))
        throw NumericalError("partition_p1: value underflowed or lost positivity; "
                             "spectrum spread is too large for double range");
    return value;
}

std::vector<double> log_partition_gradient(const Spectrum& lam) {
    const int n = lam.size();
    // gradient is invariant under lam -> lam + c*1, so shift to min 0
    std::vector<double> shifted = lam.values();
    const double c = shifted[0];
    for (double& x : shifted) x -= c;

    const double denom = dd::dd_exp(shifted, 1.0);
    if (!(denom > 0.0))
        throw NumericalError("log_partition_gradient: partition value underflowed");
    std::vector<double> g(n);
    std::vector<double> doubled(shifted.size() + 1);
    for (int i = 0; i < n; ++i) {
        std::copy(shifted.begin(), shifted.end(), doubled.begin());
        doubled.back() = shifted[i];
        g[i] = dd::dd_exp(doubled, 1.0) / denom;
    }
    return g;
}

} // namespace orbitkit
