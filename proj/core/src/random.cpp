#include "orbitkit/random.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "orbitkit/errors.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

} // namespace

RandomSource::RandomSource(uint64_t seed) : seed_(seed), state_(seed) {}

uint64_t RandomSource::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RandomSource::next_uniform() {
    // 53-bit mantissa, offset by half an ulp: strictly inside (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomSource::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

std::complex<double> RandomSource::next_complex_gaussian() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-std::log(u1)); // sqrt(-2 ln u) / sqrt(2)
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

RandomSource RandomSource::spawn(uint64_t index) const {
    return RandomSource(mix64(seed_ ^ mix64(index + kGolden)));
}

UnitaryMatrix haar_unitary(int n, RandomSource& rng) {
    if (n < 1) throw DomainError("haar_unitary: n must be >= 1");
    // Ginibre ensemble, row-major draw order
    ComplexMatrix z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z.at(i, j) = rng.next_complex_gaussian();

    // Householder QR: accumulate Q explicitly, keep R's diagonal phases.
    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<cplx> v(n);
    for (int k = 0; k < n; ++k) {
        double xnorm = 0.0;
        for (int i = k; i < n; ++i) xnorm += std::norm(z.at(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm <= 1e-300) continue;
        const cplx x0 = z.at(k, k);
        const double ax0 = std::abs(x0);
        const cplx phase = (ax0 > 0.0) ? x0 / ax0 : cplx(1.0, 0.0);
        // v = x + phase * ||x|| * e_k maximizes |v_k| (no cancellation)
        double vnorm2 = 0.0;
        for (int i = k; i < n; ++i) {
            v[i] = z.at(i, k);
            if (i == k) v[i] += phase * xnorm;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 <= 1e-300) continue;
        // apply H = I - 2 v v* / |v|^2 on the left of z and of q
        for (int j = k; j < n; ++j) {
            cplx dot = 0.0;
            for (int i = k; i < n; ++i) dot += std::conj(v[i]) * z.at(i, j);
            const cplx f = 2.0 * dot / vnorm2;
            for (int i = k; i < n; ++i) z.at(i, j) -= f * v[i];
        }
        for (int j = 0; j < n; ++j) {
            cplx dot = 0.0;
            for (int i = k; i < n; ++i) dot += std::conj(v[i]) * q.at(i, j);
            const cplx f = 2.0 * dot / vnorm2;
            for (int i = k; i < n; ++i) q.at(i, j) -= f * v[i];
        }
    }
    // Now z = R with q = H_{n-1}...H_0, i.e. Ginibre = q* R. Columns of q*
    // are rephased by diag(r_jj / |r_jj|) to remove the QR sign ambiguity.
    ComplexMatrix u(n);
    for (int j = 0; j < n; ++j) {
        const cplx rjj = z.at(j, j);
        const double a = std::abs(rjj);
        const cplx ph = (a > 0.0) ? rjj / a : cplx(1.0, 0.0);
        for (int i = 0; i < n; ++i) u.at(i, j) = std::conj(q.at(j, i)) * ph;
    }
    return UnitaryMatrix(std::move(u));
}

HermitianMatrix sample_orbit_uniform(const Spectrum& lam, RandomSource& rng) {
    const int n = lam.size();
    const UnitaryMatrix u = haar_unitary(n, rng);
    return u.conjugate(HermitianMatrix::diagonal(lam.values()));
}

std::vector<std::complex<double>> sample_sphere(int n, RandomSource& rng) {
    if (n < 1) throw DomainError("sample_sphere: n must be >= 1");
    std::vector<cplx> v(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = rng.next_complex_gaussian();
        norm2 += std::norm(v[i]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& z : v) z *= inv;
    return v;
}

namespace {

constexpr long long kChunk = 4096;

struct Moments {
    long long count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    // numerically stable pooled combine (Chan et al.)
    void merge(const Moments& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double nd = static_cast<double>(count);
        const double od = static_cast<double>(o.count);
        const double delta = o.mean - mean;
        const double total = nd + od;
        mean += delta * od / total;
        m2 += o.m2 + delta * delta * nd * od / total;
        count += o.count;
    }
};

MonteCarloEstimate finalize(const Moments& m) {
    MonteCarloEstimate e;
    e.n_samples = m.count;
    e.mean = m.mean;
    const double var = (m.count > 1) ? m.m2 / static_cast<double>(m.count - 1) : 0.0;
    e.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(m.count));
    return e;
}

template <typename ChunkFn>
MonteCarloEstimate run_chunked(long long n_samples, const RandomSource& rng, int threads,
                               ChunkFn&& chunk_fn) {
    if (n_samples < 2) throw DomainError("monte carlo: n_samples must be >= 2");
    const long long n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<Moments> parts(static_cast<size_t>(n_chunks));
    auto worker = [&](long long c) {
        RandomSource sub = rng.spawn(static_cast<uint64_t>(c));
        const long long lo = c * kChunk;
        const long long hi = std::min(lo + kChunk, n_samples);
        Moments m;
        for (long long s = lo; s < hi; ++s) m.add(chunk_fn(sub));
        parts[static_cast<size_t>(c)] = m;
    };
    if (threads <= 1 || n_chunks == 1) {
        for (long long c = 0; c < n_chunks; ++c) worker(c);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::future<void>> pool;
        const int nt = static_cast<int>(std::min<long long>(threads, n_chunks));
        for (int t = 0; t < nt; ++t) {
            pool.push_back(std::async(std::launch::async, [&]() {
                for (;;) {
                    const long long c = next.fetch_add(1);
                    if (c >= n_chunks) break;
                    worker(c);
                }
            }));
        }
        for (auto& f : pool) f.get();
    }
    Moments total;
    for (const Moments& m : parts) total.merge(m);
    return finalize(total);
}

} // namespace

MonteCarloEstimate mc_expectation(const Spectrum& lam, const HermitianMatrix& y,
                                  long long n_samples, const RandomSource& rng, int threads) {
    const int n = lam.size();
    if (y.dim() != n) throw DomainError("mc_expectation: dimension mismatch");

    // The exponent ranges over [min, max] of <Y, X> on the orbit; both
    // extremes are S_n pairings of the two spectra (Kostant reduction).
    const Spectrum yspec = eigh(y).eigenvalues;
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < n; ++i) {
        lo += lam[i] * yspec[n - 1 - i];
        hi += lam[i] * yspec[i];
    }
    if (std::max(std::abs(lo), std::abs(hi)) > 700.0) {
        std::ostringstream os;
        os << "mc_expectation: exponent range [" << lo << ", " << hi
           << "] overflows exp(); shift Y by c*I and use the shift identity "
              "E[exp(-<Y,X>)] = exp(c*tr(Lambda)) * E[exp(-<Y+cI,X>)]";
        throw OverflowError(os.str());
    }

    const std::vector<double>& lv = lam.values();
    return run_chunked(n_samples, rng, threads, [&](RandomSource& sub) {
        const UnitaryMatrix u = haar_unitary(n, sub);
        // <Y, U diag(lam) U*> = sum_j lam_j * (u_j)* Y u_j
        double t = 0.0;
        for (int j = 0; j < n; ++j) {
            cplx quad = 0.0;
            for (int i = 0; i < n; ++i) {
                cplx yi = 0.0;
                for (int k = 0; k < n; ++k) yi += y.at(i, k) * u.at(k, j);
                quad += std::conj(u.at(i, j)) * yi;
            }
            t += lv[j] * quad.real();
        }
        return std::exp(-t);
    });
}

MonteCarloEstimate mc_sphere_expectation(const Spectrum& lam, long long n_samples,
                                         const RandomSource& rng, int threads) {
    const int n = lam.size();
    if (std::max(std::abs(lam[0]), std::abs(lam[n - 1])) > 700.0)
        throw OverflowError("mc_sphere_expectation: |lambda| too large for exp(); "
                            "shift lambda and use the shift identity");
    const std::vector<double>& lv = lam.values();
    return run_chunked(n_samples, rng, threads, [&](RandomSource& sub) {
        const std::vector<cplx> v = sample_sphere(n, sub);
        double t = 0.0;
        for (int i = 0; i < n; ++i) t += lv[i] * std::norm(v[i]);
        return std::exp(-t);
    });
}

} // namespace orbitkit
