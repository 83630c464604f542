#include <benchmark/benchmark.h>

#include "orbitkit/hciz.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/partition.hpp"
#include "orbitkit/random.hpp"
#include "orbitkit/samplers.hpp"

using namespace orbitkit;

namespace {

Spectrum ramp(int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 0.37 * i;
    return Spectrum(v);
}

void BM_HaarUnitary(benchmark::State& state) {
    RandomSource rng(1);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const UnitaryMatrix u = haar_unitary(n, rng);
        benchmark::DoNotOptimize(u.at(0, 0));
    }
}
BENCHMARK(BM_HaarUnitary)->Arg(3)->Arg(8)->Arg(16);

void BM_Eigh(benchmark::State& state) {
    RandomSource rng(2);
    const int n = static_cast<int>(state.range(0));
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const cplx z = (i == j) ? cplx(rng.next_gaussian(), 0.0) : rng.next_complex_gaussian();
            g.at(i, j) = z;
            g.at(j, i) = std::conj(z);
        }
    const HermitianMatrix a(std::move(g));
    for (auto _ : state) {
        const EighResult e = eigh(a);
        benchmark::DoNotOptimize(e.eigenvalues[0]);
    }
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(8)->Arg(16);

void BM_HcizDet(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Spectrum y = ramp(n);
    std::vector<double> lv(n);
    for (int i = 0; i < n; ++i) lv[i] = 0.51 * i + 0.1;
    const Spectrum lam(lv);
    for (auto _ : state) benchmark::DoNotOptimize(hciz_det(y, lam));
}
BENCHMARK(BM_HcizDet)->Arg(3)->Arg(6)->Arg(10);

void BM_HcizWeylSum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Spectrum y = ramp(n);
    std::vector<double> lv(n);
    for (int i = 0; i < n; ++i) lv[i] = 0.51 * i + 0.1;
    const Spectrum lam(lv);
    for (auto _ : state) benchmark::DoNotOptimize(hciz_weyl_sum(y, lam));
}
BENCHMARK(BM_HcizWeylSum)->Arg(4)->Arg(6)->Arg(8);

void BM_PartitionP1(benchmark::State& state) {
    const Spectrum lam = ramp(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(partition_p1(lam));
}
BENCHMARK(BM_PartitionP1)->Arg(4)->Arg(8)->Arg(16);

void BM_SimplexRejection(benchmark::State& state) {
    RandomSource rng(3);
    const Spectrum lam = ramp(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const SimplexPoint x = sample_simplex_exponential(lam, rng, SimplexMethod::rejection);
        benchmark::DoNotOptimize(x[0]);
    }
}
BENCHMARK(BM_SimplexRejection)->Arg(3)->Arg(6);

void BM_SimplexInverseCdf(benchmark::State& state) {
    RandomSource rng(4);
    const Spectrum lam = ramp(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const SimplexPoint x = sample_simplex_exponential(lam, rng, SimplexMethod::inverse_cdf);
        benchmark::DoNotOptimize(x[0]);
    }
}
BENCHMARK(BM_SimplexInverseCdf)->Arg(3)->Arg(6);

void BM_MinorSampler(benchmark::State& state) {
    RandomSource rng(5);
    const Spectrum lam = ramp(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const InterlacingVector a = sample_minor_eigs(lam, rng);
        benchmark::DoNotOptimize(a[0]);
    }
}
BENCHMARK(BM_MinorSampler)->Arg(3)->Arg(6);

} // namespace
