#include "doctest.h"

#include <cmath>

#include "orbitkit/linalg.hpp"
#include "orbitkit/partition.hpp"
#include "orbitkit/random.hpp"
#include "support/test_util.hpp"

using namespace orbitkit;

TEST_CASE("haar_unitary n=1 is a phase") {
    RandomSource rng(7);
    for (int i = 0; i < 10; ++i) {
        const UnitaryMatrix u = haar_unitary(1, rng);
        CHECK(std::abs(std::abs(u.at(0, 0)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("fixed seed reproduces haar matrices bit-exactly") {
    RandomSource a(42), b(42);
    const UnitaryMatrix ua = haar_unitary(3, a);
    const UnitaryMatrix ub = haar_unitary(3, b);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ua.at(i, j) == ub.at(i, j));
}

TEST_CASE("spawned sub-streams are deterministic and distinct") {
    const RandomSource root(9);
    RandomSource c1 = root.spawn(0);
    RandomSource c2 = root.spawn(0);
    RandomSource c3 = root.spawn(1);
    CHECK(c1.next_u64() == c2.next_u64());
    RandomSource c4 = root.spawn(0);
    CHECK(c4.next_u64() != c3.next_u64());
}

TEST_CASE("first-entry second moment matches 1/n") {
    RandomSource rng(11);
    const int n = 3;
    test::MeanAccumulator acc;
    for (int s = 0; s < 100000; ++s) {
        const UnitaryMatrix u = haar_unitary(n, rng);
        acc.add(std::norm(u.at(0, 0)));
    }
    CHECK(std::abs(acc.zscore(1.0 / n)) <= 3.0);
}

TEST_CASE("haar distribution is translation invariant") {
    RandomSource rng(12);
    const int n = 3;
    const UnitaryMatrix v = haar_unitary(n, rng);
    test::MeanAccumulator plain[3], translated[3];
    for (int s = 0; s < 30000; ++s) {
        const UnitaryMatrix u = haar_unitary(n, rng);
        // diag(U e1 e1* U*) = |first column|^2, then the same under V U
        const ComplexMatrix vu = v.matrix().multiply(u.matrix());
        for (int i = 0; i < n; ++i) {
            plain[i].add(std::norm(u.at(i, 0)));
            translated[i].add(std::norm(vu.at(i, 0)));
        }
    }
    for (int i = 0; i < n; ++i) {
        const double se = std::sqrt(plain[i].stderr_of_mean() * plain[i].stderr_of_mean() +
                                    translated[i].stderr_of_mean() *
                                        translated[i].stderr_of_mean());
        CHECK(std::abs(plain[i].mean - translated[i].mean) <= 3.0 * se);
    }
}

TEST_CASE("first-column moments match the sphere moment formula") {
    RandomSource rng(13);
    for (int n = 2; n <= 4; ++n) {
        std::vector<MultiIndex> cases;
        cases.emplace_back(std::vector<int>(n, 0));
        for (int d = 1; d <= 3; ++d) {
            std::vector<int> alpha(n, 0);
            alpha[0] = d;
            cases.emplace_back(alpha);
        }
        {
            std::vector<int> alpha(n, 0);
            alpha[0] = 1;
            alpha[n - 1] = 2;
            cases.emplace_back(alpha);
        }
        std::vector<test::MeanAccumulator> acc(cases.size());
        for (int s = 0; s < 60000; ++s) {
            const UnitaryMatrix u = haar_unitary(n, rng);
            for (size_t c = 0; c < cases.size(); ++c) {
                double prod = 1.0;
                for (int i = 0; i < n; ++i) {
                    const double p2 = std::norm(u.at(i, 0));
                    for (int k = 0; k < cases[c][i]; ++k) prod *= p2;
                }
                acc[c].add(prod);
            }
        }
        for (size_t c = 0; c < cases.size(); ++c) {
            const double expected = bombieri_moment(cases[c]).value();
            CHECK(std::abs(acc[c].zscore(expected)) <= 3.0);
        }
    }
}

TEST_CASE("central orbit is a single point") {
    RandomSource rng(14);
    const Spectrum lam({0.75, 0.75, 0.75});
    const HermitianMatrix x = sample_orbit_uniform(lam, rng);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const cplx expect = (i == j) ? cplx(0.75, 0.0) : cplx(0.0, 0.0);
            CHECK(std::abs(x.at(i, j) - expect) <= 1e-12);
        }
}

TEST_CASE("orbit samples keep their spectrum") {
    RandomSource rng(15);
    const Spectrum lam({-1.0, 0.3, 2.2});
    for (int s = 0; s < 50; ++s) {
        const HermitianMatrix x = sample_orbit_uniform(lam, rng);
        const Spectrum eig = eigh(x).eigenvalues;
        for (int i = 0; i < 3; ++i) CHECK(std::abs(eig[i] - lam[i]) <= 1e-9);
    }
}

TEST_CASE("n=2 rank-1 orbit diagonal is uniform") {
    RandomSource rng(16);
    const Spectrum lam({1.0, 0.0});
    std::vector<double> samples;
    samples.reserve(10000);
    for (int s = 0; s < 10000; ++s)
        samples.push_back(sample_orbit_uniform(lam, rng).at(0, 0).real());
    const double p = test::ks_pvalue(samples, [](double x) {
        return std::clamp(x, 0.0, 1.0);
    });
    CHECK(p >= 0.001);
}

TEST_CASE("mc_expectation of the constant integrand is exact") {
    RandomSource rng(17);
    const Spectrum lam({0.0, 1.0, 2.0});
    const MonteCarloEstimate est = mc_expectation(lam, HermitianMatrix::zero(3), 1000, rng);
    CHECK(est.mean == 1.0);
    CHECK(est.stderr_ == 0.0);
    CHECK(est.n_samples == 1000);
}

TEST_CASE("mc_expectation matches the n=2 closed form") {
    RandomSource rng(18);
    const Spectrum lam({0.0, 1.0});
    const MonteCarloEstimate est =
        mc_expectation(lam, HermitianMatrix::diagonal({0.0, 1.0}), 200000, rng);
    const double expected = 1.0 - std::exp(-1.0);
    CHECK(std::abs(est.mean - expected) <= 3.0 * est.stderr_);
}

TEST_CASE("mc stderr follows the CLT scaling") {
    const RandomSource rng(19);
    const Spectrum lam({0.0, 0.5, 1.3});
    const HermitianMatrix y = HermitianMatrix::diagonal({0.2, 0.8, 1.1});
    const MonteCarloEstimate small = mc_expectation(lam, y, 100000, rng);
    const MonteCarloEstimate big = mc_expectation(lam, y, 400000, rng);
    const double ratio = big.stderr_ / small.stderr_;
    CHECK(ratio >= 0.4);
    CHECK(ratio <= 0.6);
}

TEST_CASE("mc_expectation is identical across thread counts") {
    const RandomSource rng(20);
    const Spectrum lam({0.0, 1.0, 2.5});
    const HermitianMatrix y = HermitianMatrix::diagonal({0.1, 0.4, 0.9});
    const MonteCarloEstimate a = mc_expectation(lam, y, 50000, rng, 1);
    const MonteCarloEstimate b = mc_expectation(lam, y, 50000, rng, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("mc_expectation refuses overflowing exponents") {
    RandomSource rng(21);
    const Spectrum lam({0.0, 400.0});
    CHECK_THROWS_AS(mc_expectation(lam, HermitianMatrix::diagonal({0.0, 400.0}), 100, rng),
                    OverflowError);
}

TEST_CASE("sphere estimator agrees with the orbit estimator") {
    const RandomSource rng(22);
    const Spectrum lam({0.0, 0.7, 1.9});
    const MonteCarloEstimate sphere = mc_sphere_expectation(lam, 200000, rng);
    // rank-1 orbit of diag(0,...,0,1) carries the same integral
    const MonteCarloEstimate orbit =
        mc_expectation(Spectrum({0.0, 0.0, 1.0}), HermitianMatrix::diagonal(lam.values()),
                       200000, rng.spawn(999));
    const double se = std::sqrt(sphere.stderr_ * sphere.stderr_ + orbit.stderr_ * orbit.stderr_);
    CHECK(std::abs(sphere.mean - orbit.mean) <= 3.0 * se);
}
