#ifndef ORBITKIT_SAMPLERS_HPP
#define ORBITKIT_SAMPLERS_HPP

#include <vector>

#include "orbitkit/hciz.hpp"
#include "orbitkit/matrix.hpp"
#include "orbitkit/random.hpp"

namespace orbitkit {

/// Nonnegative coordinates summing to 1 (renormalized at construction;
/// adjustment beyond 1e-12 relative is rejected).
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords);

    int size() const { return static_cast<int>(x_.size()); }
    double operator[](int i) const { return x_[i]; }
    const std::vector<double>& coords() const { return x_; }

private:
    std::vector<double> x_;
};

/// Nested minor spectra: level k has length k, level n is the parent
/// spectrum, and each level interlaces the one above.
struct CornersChain {
    std::vector<std::vector<double>> levels; // levels[k-1] has length k
    long long resamples = 0; // coincident-level retries (probability-zero events)
};

enum class SimplexMethod { inverse_cdf, rejection };

/// Exact sample of the minor-spectrum density (rejection from the uniform
/// box; the envelope is the per-factor corner bound). Requires distinct lam.
InterlacingVector sample_minor_eigs(const Spectrum& lam, RandomSource& rng);

/// Recursive minor chain: level k sampled from level k+1 by
/// sample_minor_eigs. Numerically coincident levels are resampled and
/// counted.
CornersChain sample_corners_chain(const Spectrum& lam, RandomSource& rng);

/// Density proportional to exp(-<lam, x>) against the uniform probability
/// measure on the simplex. Both methods draw from the same distribution:
/// inverse_cdf follows the convolution conditionals (adaptive-Simpson CDF,
/// bisection inverse); rejection thins uniform simplex points and refuses
/// spreads over 30 (EfficiencyError). `attempts`, when given, counts
/// rejection proposals for acceptance-rate checks.
SimplexPoint sample_simplex_exponential(const Spectrum& lam, RandomSource& rng,
                                        SimplexMethod method,
                                        long long* attempts = nullptr);

/// Unit vector on the complex sphere with density prop. to exp(-v* A v):
/// eigendecompose A, draw the squared overlaps from the simplex
/// exponential, attach independent uniform phases, rotate back.
std::vector<cplx> sample_bingham_rank1(const HermitianMatrix& a, RandomSource& rng);

} // namespace orbitkit

#endif
