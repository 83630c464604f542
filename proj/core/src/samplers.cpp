#include "orbitkit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "orbitkit/divided_difference.hpp"
#include "orbitkit/errors.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/quadrature.hpp"

namespace orbitkit {

SimplexPoint::SimplexPoint(std::vector<double> coords) : x_(std::move(coords)) {
    if (x_.empty()) throw DomainError("SimplexPoint: empty");
    double s = 0.0;
    for (double v : x_) {
        if (!(v >= 0.0)) throw DomainError("SimplexPoint: negative coordinate");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12 * std::max(1.0, s))
        throw DomainError("SimplexPoint: coordinates do not sum to 1");
    for (double& v : x_) v /= s;
}

InterlacingVector sample_minor_eigs(const Spectrum& lam, RandomSource& rng) {
    const int n = lam.size();
    if (n < 2) throw DomainError("sample_minor_eigs: need n >= 2");
    if (!(lam.min_gap() > 0.0))
        throw DomainError("sample_minor_eigs: repeated parent eigenvalues");

    // Envelope: each Vandermonde factor a_j - a_i (i < j) is at most its
    // box maximum lam_{j+1} - lam_i, so the product of those maxima bounds
    // |V| everywhere. (The max of |V| over box corners is NOT a bound.)
    double log_m = 0.0;
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n - 1; ++j) log_m += std::log(lam[j + 1] - lam[i]);

    std::vector<double> a(n - 1);
    const long long max_tries = 100'000'000;
    for (long long tries = 0; tries < max_tries; ++tries) {
        for (int i = 0; i < n - 1; ++i)
            a[i] = lam[i] + (lam[i + 1] - lam[i]) * rng.next_uniform();
        double log_v = 0.0;
        bool degenerate = false;
        for (int i = 0; i < n - 1 && !degenerate; ++i)
            for (int j = i + 1; j < n - 1; ++j) {
                const double d = a[j] - a[i];
                if (d <= 0.0) {
                    degenerate = true;
                    break;
                }
                log_v += std::log(d);
            }
        if (degenerate) continue;
        const double u = rng.next_uniform();
        if (std::log(u) < log_v - log_m) return InterlacingVector(a, lam);
    }
    throw NumericalError("sample_minor_eigs: rejection did not accept within the retry "
                         "budget; spectrum too degenerate");
}

CornersChain sample_corners_chain(const Spectrum& lam, RandomSource& rng) {
    const int n = lam.size();
    if (!(lam.min_gap() > 0.0) && n > 1)
        throw DomainError("sample_corners_chain: repeated parent eigenvalues");
    CornersChain chain;
    chain.levels.resize(n);
    chain.levels[n - 1] = lam.values();
    const double scale = std::max(1.0, std::max(std::abs(lam[0]), std::abs(lam[n - 1])));
    for (int k = n - 1; k >= 1; --k) {
        const Spectrum parent{chain.levels[k]};
        for (;;) {
            const InterlacingVector sample = sample_minor_eigs(parent, rng);
            double gap = std::numeric_limits<double>::infinity();
            for (int i = 0; i + 1 < k; ++i)
                gap = std::min(gap, sample.values()[i + 1] - sample.values()[i]);
            if (k == 1 || gap > 1e-14 * scale) {
                chain.levels[k - 1] = sample.values();
                break;
            }
            ++chain.resamples; // coincident level: probability-zero event in floats
        }
    }
    return chain;
}

namespace {

// k-fold one-sided exponential convolution of the nodes at argument t;
// equals dd_exp and stays finite for repeated nodes.
double conv_value(const std::vector<double>& nodes, double t) {
    return dd::dd_exp(nodes, t);
}

SimplexPoint simplex_inverse_cdf(const Spectrum& lam, RandomSource& rng) {
    const int n = lam.size();
    // the density is shift-invariant up to normalization; work near 0
    std::vector<double> nodes = lam.values();
    const double base = nodes[0];
    for (double& v : nodes) v -= base;

    std::vector<double> x(n);
    double remaining = 1.0;
    std::vector<double> tail;
    for (int i = 0; i < n - 1; ++i) {
        tail.assign(nodes.begin() + i, nodes.end());
        const std::vector<double> rest(nodes.begin() + i + 1, nodes.end());
        const double lam_i = nodes[i];
        const double t = remaining;
        const double total = conv_value(tail, t);
        const double u = rng.next_uniform();
        const double target = u * total;
        // CDF tolerance 1e-10 relative to the conditional normalizer
        const double tol = 1e-10 * std::max(total, 1e-300);
        auto integrand = [&](double s) { return std::exp(-lam_i * s) * conv_value(rest, t - s); };
        auto cdf = [&](double s) {
            if (s <= 0.0) return 0.0;
            return quad::integrate_adaptive_simpson(integrand, 0.0, s, tol);
        };
        double lo = 0.0, hi = t;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (cdf(mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        x[i] = 0.5 * (lo + hi);
        remaining -= x[i];
        if (remaining < 0.0) remaining = 0.0;
    }
    x[n - 1] = remaining;
    return SimplexPoint(std::move(x));
}

SimplexPoint simplex_rejection(const Spectrum& lam, RandomSource& rng, long long* attempts) {
    const int n = lam.size();
    const double spread = lam.spread();
    if (spread > 30.0) {
        std::ostringstream os;
        os << "sample_simplex_exponential: rejection acceptance rate is about exp(-"
           << spread << "); use inverse_cdf for spread(lambda) > 30";
        throw EfficiencyError(os.str());
    }
    std::vector<double> shifted = lam.values();
    const double base = shifted[0];
    for (double& v : shifted) v -= base;

    std::vector<double> x(n);
    const long long max_tries = 500'000'000;
    for (long long tries = 1; tries <= max_tries; ++tries) {
        // uniform simplex point from exponential spacings
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] = -std::log(rng.next_uniform());
            s += x[i];
        }
        for (double& v : x) v /= s;
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += shifted[i] * x[i];
        const double u = rng.next_uniform();
        if (u < std::exp(-dot)) {
            if (attempts) *attempts += tries;
            return SimplexPoint(std::move(x));
        }
    }
    throw NumericalError("sample_simplex_exponential: rejection retry budget exhausted");
}

} // namespace

SimplexPoint sample_simplex_exponential(const Spectrum& lam, RandomSource& rng,
                                        SimplexMethod method, long long* attempts) {
    if (method == SimplexMethod::rejection) return simplex_rejection(lam, rng, attempts);
    return simplex_inverse_cdf(lam, rng);
}

std::vector<cplx> sample_bingham_rank1(const HermitianMatrix& a, RandomSource& rng) {
    const int n = a.dim();
    const EighResult e = eigh(a);
    // squared overlaps with the eigenbasis follow the simplex exponential
    const SimplexMethod method =
        (e.eigenvalues.spread() <= 30.0) ? SimplexMethod::rejection : SimplexMethod::inverse_cdf;
    const SimplexPoint x = sample_simplex_exponential(e.eigenvalues, rng, method);
    // phases are independent uniform: the sphere measure is invariant
    // under the diagonal torus, which the projection v -> v v* forgets
    std::vector<cplx> v(n, cplx(0.0, 0.0));
    for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * rng.next_uniform();
        const cplx amp = std::sqrt(x[j]) * cplx(std::cos(theta), std::sin(theta));
        for (int i = 0; i < n; ++i) v[i] += e.eigenvectors.at(i, j) * amp;
    }
    double norm2 = 0.0;
    for (const cplx& z : v) norm2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& z : v) z *= inv;
    return v;
}

} // namespace orbitkit
