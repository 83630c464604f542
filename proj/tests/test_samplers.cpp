#include "doctest.h"

#include <cmath>

#include "orbitkit/linalg.hpp"
#include "orbitkit/partition.hpp"
#include "orbitkit/samplers.hpp"
#include "support/test_util.hpp"

using namespace orbitkit;

TEST_CASE("SimplexPoint renormalizes tiny drift and rejects bad input") {
    const SimplexPoint p({0.25, 0.75 + 1e-13});
    CHECK(p[0] + p[1] == 1.0);
    CHECK_THROWS_AS(SimplexPoint({0.5, -0.1, 0.6}), DomainError);
    CHECK_THROWS_AS(SimplexPoint({0.5, 0.4}), DomainError);
}

TEST_CASE("sample_minor_eigs n=2 marginal is uniform") {
    RandomSource rng(61);
    const Spectrum lam({0.0, 1.0});
    std::vector<double> xs;
    xs.reserve(10000);
    for (int s = 0; s < 10000; ++s) xs.push_back(sample_minor_eigs(lam, rng)[0]);
    CHECK(test::ks_pvalue(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }) >= 0.001);
}

TEST_CASE("sample_minor_eigs always interlaces and demands distinct parents") {
    RandomSource rng(62);
    const Spectrum lam({-1.0, 0.2, 1.5, 3.0});
    for (int s = 0; s < 500; ++s) {
        const InterlacingVector a = sample_minor_eigs(lam, rng);
        CHECK(interlaces(a.values(), lam));
    }
    CHECK_THROWS_AS(sample_minor_eigs(Spectrum({1.0, 1.0}), rng), DomainError);
}

TEST_CASE("sample_minor_eigs n=3 top-coordinate mean matches the box integral") {
    RandomSource rng(63);
    const Spectrum lam({0.0, 1.0, 2.0});
    test::MeanAccumulator acc;
    for (int s = 0; s < 30000; ++s) acc.add(sample_minor_eigs(lam, rng)[1]);
    CHECK(std::abs(acc.zscore(19.0 / 12.0)) <= 3.0);
}

TEST_CASE("corners chain structure and marginals") {
    RandomSource rng(64);
    SUBCASE("n=1 chain is the spectrum itself") {
        const CornersChain c = sample_corners_chain(Spectrum({2.5}), rng);
        REQUIRE(c.levels.size() == 1);
        CHECK(c.levels[0][0] == 2.5);
    }
    SUBCASE("every level interlaces the one above") {
        const Spectrum lam({0.0, 0.7, 1.9, 3.0});
        for (int s = 0; s < 2000; ++s) {
            const CornersChain c = sample_corners_chain(lam, rng);
            REQUIRE(c.levels.size() == 4);
            for (int k = 3; k >= 1; --k)
                CHECK(interlaces(c.levels[k - 1], Spectrum(c.levels[k])));
        }
    }
    SUBCASE("first chain step matches sample_minor_eigs") {
        const Spectrum lam({0.0, 1.0, 2.0});
        std::vector<double> via_chain, direct;
        for (int s = 0; s < 8000; ++s) {
            via_chain.push_back(sample_corners_chain(lam, rng).levels[1][1]);
            direct.push_back(sample_minor_eigs(lam, rng)[1]);
        }
        CHECK(test::ks_pvalue_two_sample(via_chain, direct) >= 0.001);
    }
}

TEST_CASE("simplex exponential at lambda = 0 is uniform") {
    RandomSource rng(65);
    const Spectrum lam({0.0, 0.0, 0.0});
    // moments against the exact monomial integrals, degree <= 3
    const std::vector<std::vector<int>> idx = {
        {1, 0, 0}, {2, 0, 0}, {1, 1, 0}, {3, 0, 0}, {2, 1, 0}, {1, 1, 1}};
    std::vector<test::MeanAccumulator> acc(idx.size());
    for (int s = 0; s < 40000; ++s) {
        const SimplexPoint x = sample_simplex_exponential(lam, rng, SimplexMethod::rejection);
        for (size_t c = 0; c < idx.size(); ++c) {
            double m = 1.0;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < idx[c][i]; ++k) m *= x[i];
            acc[c].add(m);
        }
    }
    for (size_t c = 0; c < idx.size(); ++c) {
        const double expected = simplex_monomial_integral(MultiIndex(idx[c])).value();
        CHECK(std::abs(acc[c].zscore(expected)) <= 3.0);
    }
}

TEST_CASE("simplex exponential n=2 mean matches the closed form") {
    const double e1 = std::exp(-1.0);
    const double expected = (1.0 - 2.0 * e1) / (1.0 - e1);
    const Spectrum lam({0.0, 1.0});
    for (SimplexMethod m : {SimplexMethod::rejection, SimplexMethod::inverse_cdf}) {
        RandomSource rng(66);
        test::MeanAccumulator acc;
        const int count = (m == SimplexMethod::rejection) ? 40000 : 4000;
        for (int s = 0; s < count; ++s) acc.add(sample_simplex_exponential(lam, rng, m)[1]);
        CHECK(std::abs(acc.zscore(expected)) <= 3.0);
    }
}

TEST_CASE("both simplex methods draw the same distribution") {
    const Spectrum lam({0.0, 1.0, 3.0});
    RandomSource rng(67);
    std::vector<std::vector<double>> rej(3), inv(3);
    for (int s = 0; s < 10000; ++s) {
        const SimplexPoint x = sample_simplex_exponential(lam, rng, SimplexMethod::rejection);
        for (int i = 0; i < 3; ++i) rej[i].push_back(x[i]);
    }
    for (int s = 0; s < 3000; ++s) {
        const SimplexPoint x = sample_simplex_exponential(lam, rng, SimplexMethod::inverse_cdf);
        for (int i = 0; i < 3; ++i) inv[i].push_back(x[i]);
    }
    for (int i = 0; i < 3; ++i) CHECK(test::ks_pvalue_two_sample(rej[i], inv[i]) >= 0.001);
}

TEST_CASE("rejection sampler refuses wide spreads and reports acceptance") {
    RandomSource rng(68);
    CHECK_THROWS_AS(
        sample_simplex_exponential(Spectrum({0.0, 40.0}), rng, SimplexMethod::rejection),
        EfficiencyError);

    // acceptance rate equals the min-shifted partition function
    const Spectrum lam({0.0, 1.0, 2.0});
    long long attempts = 0;
    const int n_samples = 20000;
    for (int s = 0; s < n_samples; ++s)
        sample_simplex_exponential(lam, rng, SimplexMethod::rejection, &attempts);
    const double rate = static_cast<double>(n_samples) / static_cast<double>(attempts);
    const double expected = partition_p1(lam); // min lam already 0
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(attempts));
    CHECK(std::abs(rate - expected) <= 3.0 * se);
}

TEST_CASE("bingham sampler moments") {
    SUBCASE("zero matrix gives the uniform sphere") {
        RandomSource rng(69);
        const HermitianMatrix a = HermitianMatrix::zero(3);
        test::MeanAccumulator acc[3];
        for (int s = 0; s < 30000; ++s) {
            const std::vector<cplx> v = sample_bingham_rank1(a, rng);
            for (int i = 0; i < 3; ++i) acc[i].add(std::norm(v[i]));
        }
        for (int i = 0; i < 3; ++i) CHECK(std::abs(acc[i].zscore(1.0 / 3.0)) <= 3.0);
    }
    SUBCASE("diag(0,1) energy matches the simplex mean") {
        RandomSource rng(70);
        const HermitianMatrix a = HermitianMatrix::diagonal({0.0, 1.0});
        test::MeanAccumulator acc;
        for (int s = 0; s < 40000; ++s) {
            const std::vector<cplx> v = sample_bingham_rank1(a, rng);
            cplx q = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) q += std::conj(v[i]) * a.at(i, j) * v[j];
            acc.add(q.real());
        }
        const double e1 = std::exp(-1.0);
        CHECK(std::abs(acc.zscore((1.0 - 2.0 * e1) / (1.0 - e1))) <= 3.0);
    }
    SUBCASE("eigenbasis overlaps match the log-partition gradient") {
        RandomSource rng(74);
        const HermitianMatrix a = test::random_hermitian(4, rng);
        const EighResult e = eigh(a);
        const std::vector<double> grad = log_partition_gradient(e.eigenvalues);
        test::MeanAccumulator acc[4];
        for (int s = 0; s < 30000; ++s) {
            const std::vector<cplx> v = sample_bingham_rank1(a, rng);
            for (int j = 0; j < 4; ++j) {
                cplx overlap = 0.0;
                for (int i = 0; i < 4; ++i)
                    overlap += std::conj(e.eigenvectors.at(i, j)) * v[i];
                acc[j].add(std::norm(overlap));
            }
        }
        for (int j = 0; j < 4; ++j) CHECK(std::abs(acc[j].zscore(grad[j])) <= 3.0);
    }
    SUBCASE("samples are unit vectors and seed-deterministic") {
        RandomSource r1(72), r2(72);
        const HermitianMatrix a = HermitianMatrix::diagonal({0.0, 0.5, 2.0});
        const std::vector<cplx> v1 = sample_bingham_rank1(a, r1);
        const std::vector<cplx> v2 = sample_bingham_rank1(a, r2);
        double norm2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            CHECK(v1[i] == v2[i]);
            norm2 += std::norm(v1[i]);
        }
        CHECK(std::abs(norm2 - 1.0) <= 1e-12);
    }
}

TEST_CASE("bingham sampler is unitarily equivariant") {
    RandomSource rng(73);
    const HermitianMatrix a = test::random_hermitian(3, rng);
    const UnitaryMatrix v = haar_unitary(3, rng);
    const HermitianMatrix conj = v.conjugate(a);
    test::MeanAccumulator direct[3], rotated[3];
    for (int s = 0; s < 30000; ++s) {
        const std::vector<cplx> x = sample_bingham_rank1(conj, rng);
        for (int i = 0; i < 3; ++i) direct[i].add(std::norm(x[i]));

        const std::vector<cplx> y = sample_bingham_rank1(a, rng);
        for (int i = 0; i < 3; ++i) {
            cplx r = 0.0;
            for (int k = 0; k < 3; ++k) r += v.at(i, k) * y[k];
            rotated[i].add(std::norm(r));
        }
    }
    for (int i = 0; i < 3; ++i) {
        const double se = std::sqrt(direct[i].stderr_of_mean() * direct[i].stderr_of_mean() +
                                    rotated[i].stderr_of_mean() * rotated[i].stderr_of_mean());
        CHECK(std::abs(direct[i].mean - rotated[i].mean) <= 3.0 * se);
    }
}
