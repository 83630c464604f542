#ifndef ORBITKIT_RANDOM_HPP
#define ORBITKIT_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Counter-style seeded generator (splitmix64 stream) with Box-Muller
/// Gaussians. Identical seed + call sequence gives identical outputs on
/// every platform. Single-owner: not safe to share across threads; use
/// spawn() to derive independent sub-streams.
class RandomSource {
public:
    explicit RandomSource(uint64_t seed);

    uint64_t seed() const { return seed_; }

    uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double next_uniform();
    /// Standard normal N(0, 1).
    double next_gaussian();
    /// Standard complex normal CN(0, 1): Re, Im both N(0, 1/2).
    std::complex<double> next_complex_gaussian();

    /// Deterministic sub-stream for chunk `index`, derived by hashing
    /// (seed, index); independent of how many chunks exist.
    RandomSource spawn(uint64_t index) const;

private:
    uint64_t seed_;
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0; // standard error of the mean
    long long n_samples = 0;
};

/// Haar-distributed unitary: complex Ginibre, Householder QR, columns
/// rephased by the R-diagonal phases.
UnitaryMatrix haar_unitary(int n, RandomSource& rng);

/// Uniform point of the adjoint orbit of diag(lam): U diag(lam) U* with
/// U Haar.
HermitianMatrix sample_orbit_uniform(const Spectrum& lam, RandomSource& rng);

/// Haar point of the complex unit sphere in C^n.
std::vector<std::complex<double>> sample_sphere(int n, RandomSource& rng);

/// Monte Carlo estimate of the orbit integral of exp(-<Y, X>_F) over the
/// orbit of diag(lam). Deterministic given the seed regardless of
/// `threads`: the sample space is split into fixed chunks with hashed
/// sub-seeds and partial moments merge in chunk order.
MonteCarloEstimate mc_expectation(const Spectrum& lam, const HermitianMatrix& y,
                                  long long n_samples, const RandomSource& rng,
                                  int threads = 1);

/// Same estimator against the complex-sphere measure: mean of
/// f(|v_1|^2, ..., |v_n|^2) where f(x) = exp(-<lam, x>).
MonteCarloEstimate mc_sphere_expectation(const Spectrum& lam, long long n_samples,
                                         const RandomSource& rng, int threads = 1);

} // namespace orbitkit

#endif
