#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbitkit/schur_horn.hpp"
#include "support/test_util.hpp"

using namespace orbitkit;

namespace {

// random point of the orbit polytope: convex combination of permuted spectra
std::vector<double> random_majorized(const Spectrum& lam, RandomSource& rng, int terms = 4) {
    const int n = lam.size();
    std::vector<double> v(n, 0.0);
    std::vector<double> w(terms);
    double wsum = 0.0;
    for (double& x : w) {
        x = rng.next_uniform();
        wsum += x;
    }
    std::vector<int> perm(n);
    for (int t = 0; t < terms; ++t) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[static_cast<int>(rng.next_u64() % (i + 1))]);
        for (int i = 0; i < n; ++i) v[i] += (w[t] / wsum) * lam[perm[i]];
    }
    return v;
}

double brute_force_min(const Spectrum& lam, const std::vector<double>& z) {
    std::vector<int> perm(lam.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        double v = 0.0;
        for (size_t i = 0; i < perm.size(); ++i) v += lam[perm[i]] * z[i];
        best = std::min(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST_CASE("unistochastic of the identity and of the rotation kernel") {
    const DoublyStochasticMatrix qi = unistochastic(UnitaryMatrix::identity(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(qi.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

    const double t = 0.3;
    ComplexMatrix u(2);
    u.at(0, 0) = std::sqrt(1.0 - t);
    u.at(0, 1) = std::sqrt(t);
    u.at(1, 0) = -std::sqrt(t);
    u.at(1, 1) = std::sqrt(1.0 - t);
    const DoublyStochasticMatrix q = unistochastic(UnitaryMatrix(std::move(u)));
    CHECK(q.at(0, 0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(q.at(0, 1) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(q.at(1, 0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(q.at(1, 1) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("unistochastic rows and columns sum to one") {
    RandomSource rng(31);
    const DoublyStochasticMatrix q = unistochastic(haar_unitary(5, rng));
    for (int i = 0; i < 5; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < 5; ++j) {
            row += q.at(i, j);
            col += q.at(j, i);
        }
        CHECK(std::abs(row - 1.0) <= 1e-10);
        CHECK(std::abs(col - 1.0) <= 1e-10);
    }
}

TEST_CASE("is_majorized basics") {
    const Spectrum lam({0.0, 1.0, 3.0});
    CHECK(is_majorized({0.0, 1.0, 3.0}, lam));
    CHECK(is_majorized({3.0, 0.0, 1.0}, lam));
    const double mean = 4.0 / 3.0;
    CHECK(is_majorized({mean, mean, mean}, lam));
    CHECK(!is_majorized({2.0, 0.0}, Spectrum({1.0, 1.0})));
    CHECK(!is_majorized({0.0, 0.5, 3.5}, lam));
    CHECK_THROWS_AS(is_majorized({1.0}, lam), DomainError);
}

TEST_CASE("Schur direction: conjugated diagonals are majorized") {
    RandomSource rng(32);
    for (int n : {2, 4, 6}) {
        const Spectrum lam = test::random_distinct_spectrum(n, rng, 3.0, 0.05);
        const HermitianMatrix d = HermitianMatrix::diagonal(lam.values());
        for (int s = 0; s < 200; ++s) {
            const UnitaryMatrix u = haar_unitary(n, rng);
            CHECK(is_majorized(u.conjugate(d).real_diagonal(), lam));
        }
    }
}

TEST_CASE("birkhoff_decompose trivial cases") {
    const BirkhoffDecomposition di =
        birkhoff_decompose(DoublyStochasticMatrix(2, {1.0, 0.0, 0.0, 1.0}));
    REQUIRE(di.terms.size() == 1);
    CHECK(di.terms[0].first == doctest::Approx(1.0));
    CHECK(di.terms[0].second.mapping() == std::vector<int>{0, 1});

    const BirkhoffDecomposition dh =
        birkhoff_decompose(DoublyStochasticMatrix(2, {0.5, 0.5, 0.5, 0.5}));
    REQUIRE(dh.terms.size() == 2);
    CHECK(dh.terms[0].first == doctest::Approx(0.5));
    CHECK(dh.terms[1].first == doctest::Approx(0.5));
    CHECK(dh.terms[0].second.mapping() != dh.terms[1].second.mapping());
}

TEST_CASE("birkhoff_decompose reconstructs unistochastic matrices") {
    RandomSource rng(33);
    for (int n : {3, 4, 6}) {
        const DoublyStochasticMatrix q = unistochastic(haar_unitary(n, rng));
        const BirkhoffDecomposition d = birkhoff_decompose(q);
        CHECK(static_cast<int>(d.terms.size()) <= (n - 1) * (n - 1) + 1);
        CHECK(std::abs(d.weight_sum() - 1.0) <= 1e-10);
        const std::vector<double> r = d.reconstruct(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(r[static_cast<size_t>(i) * n + j] - q.at(i, j)) <= 1e-8);
    }
}

TEST_CASE("horn_construct hits the requested diagonal") {
    SUBCASE("v equal to lambda") {
        const Spectrum lam({0.5, 1.5, 2.5});
        const UnitaryMatrix u = horn_construct({0.5, 1.5, 2.5}, lam);
        const HermitianMatrix x = u.conjugate(HermitianMatrix::diagonal(lam.values()));
        const std::vector<double> d = x.real_diagonal();
        for (int i = 0; i < 3; ++i) CHECK(std::abs(d[i] - lam[i]) <= 1e-12);
    }
    SUBCASE("n=2 interior point") {
        const Spectrum lam({0.0, 1.0});
        const UnitaryMatrix u = horn_construct({0.7, 0.3}, lam);
        const HermitianMatrix x = u.conjugate(HermitianMatrix::diagonal(lam.values()));
        CHECK(std::abs(x.at(0, 0).real() - 0.7) <= 1e-12);
        CHECK(std::abs(x.at(1, 1).real() - 0.3) <= 1e-12);
    }
    SUBCASE("random polytope points round trip") {
        RandomSource rng(34);
        const Spectrum lam = test::random_distinct_spectrum(6, rng, 4.0, 0.1);
        for (int s = 0; s < 100; ++s) {
            const std::vector<double> v = random_majorized(lam, rng);
            const UnitaryMatrix u = horn_construct(v, lam);
            const HermitianMatrix x = u.conjugate(HermitianMatrix::diagonal(lam.values()));
            const std::vector<double> d = x.real_diagonal();
            for (int i = 0; i < 6; ++i) CHECK(std::abs(d[i] - v[i]) <= 1e-8);
            const Spectrum eig = eigh(x).eigenvalues;
            for (int i = 0; i < 6; ++i) CHECK(std::abs(eig[i] - lam[i]) <= 1e-9);
        }
    }
    SUBCASE("violating point is rejected with the failing sum") {
        const Spectrum lam({1.0, 1.0});
        CHECK_THROWS_AS(horn_construct({2.0, 0.0}, lam), DomainError);
        try {
            horn_construct({2.0, 0.0}, lam);
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("partial sum") != std::string::npos);
        }
    }
}

TEST_CASE("min_orbit_linear pairs ascending with descending") {
    const OrbitLinearMinimum r = min_orbit_linear(Spectrum({1.0, 2.0}), {3.0, 4.0});
    CHECK(r.value == doctest::Approx(10.0));
    // value is attained by the returned permutation
    double v = 0.0;
    const Spectrum lam({1.0, 2.0});
    const std::vector<double> z{3.0, 4.0};
    for (int i = 0; i < 2; ++i) v += lam[r.argperm[i]] * z[i];
    CHECK(v == doctest::Approx(r.value));
}

TEST_CASE("min_orbit_linear with e1 finds the smallest eigenvalue") {
    const Spectrum lam({-2.0, 0.5, 3.0});
    const OrbitLinearMinimum r = min_orbit_linear(lam, {1.0, 0.0, 0.0});
    CHECK(r.value == doctest::Approx(-2.0));
}

TEST_CASE("min_orbit_linear on a central spectrum") {
    const Spectrum lam({2.0, 2.0, 2.0});
    const std::vector<double> z{0.3, -1.0, 4.0};
    const OrbitLinearMinimum r = min_orbit_linear(lam, z);
    CHECK(r.value == doctest::Approx(2.0 * (0.3 - 1.0 + 4.0)));
}

TEST_CASE("min_orbit_linear equals the brute-force minimum") {
    RandomSource rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<double> lv(n), z(n);
        for (double& x : lv) x = std::round(4.0 * rng.next_gaussian()) / 2.0; // force ties
        for (double& x : z) x = std::round(4.0 * rng.next_gaussian()) / 2.0;
        const Spectrum lam(lv);
        const OrbitLinearMinimum r = min_orbit_linear(lam, z);
        CHECK(r.value == doctest::Approx(brute_force_min(lam, z)).epsilon(1e-12));
    }
}

TEST_CASE("min_orbit_linear returns the lexicographically smallest optimum") {
    RandomSource rng(36);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);
        std::vector<double> lv(n), z(n);
        for (double& x : lv) x = static_cast<double>(rng.next_u64() % 3);
        for (double& x : z) x = static_cast<double>(rng.next_u64() % 3);
        const Spectrum lam(lv);
        const OrbitLinearMinimum r = min_orbit_linear(lam, z);

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best_map;
        double best = 1e300;
        do {
            double v = 0.0;
            for (int i = 0; i < n; ++i) v += lam[perm[i]] * z[i];
            if (v < best - 1e-12 || (std::abs(v - best) <= 1e-12 &&
                                     (best_map.empty() || perm < best_map))) {
                best = std::min(best, v);
                best_map = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(r.argperm.mapping() == best_map);
    }
}

TEST_CASE("min_eigenvalue agrees with eigh and random probes") {
    SUBCASE("diagonal") {
        const MinEigenvalue r = min_eigenvalue(HermitianMatrix::diagonal({3.0, 1.0, 2.0}));
        CHECK(r.value == doctest::Approx(1.0));
        CHECK(std::abs(std::abs(r.witness[1]) - 1.0) <= 1e-10);
    }
    SUBCASE("swap matrix") {
        ComplexMatrix m(2);
        m.at(0, 1) = 1.0;
        m.at(1, 0) = 1.0;
        const MinEigenvalue r = min_eigenvalue(HermitianMatrix(std::move(m)));
        CHECK(r.value == doctest::Approx(-1.0));
        CHECK(std::abs(std::abs(r.witness[0]) - 1.0 / std::sqrt(2.0)) <= 1e-10);
    }
    SUBCASE("random probes never beat the witness") {
        RandomSource rng(37);
        const HermitianMatrix a = test::random_hermitian(5, rng);
        const MinEigenvalue r = min_eigenvalue(a);
        // witness attains its value
        cplx quad = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                quad += std::conj(r.witness[i]) * a.at(i, j) * r.witness[j];
        CHECK(std::abs(quad.real() - r.value) <= 1e-9);
        for (int s = 0; s < 1000; ++s) {
            std::vector<cplx> v(5);
            double norm2 = 0.0;
            for (auto& x : v) {
                x = rng.next_complex_gaussian();
                norm2 += std::norm(x);
            }
            cplx q = 0.0;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) q += std::conj(v[i]) * a.at(i, j) * v[j];
            CHECK(q.real() / norm2 >= r.value - 1e-9);
        }
    }
}

TEST_CASE("membership and decomposition stay consistent") {
    RandomSource rng(38);
    const Spectrum lam = test::random_distinct_spectrum(5, rng, 3.0, 0.1);
    for (int s = 0; s < 20; ++s) {
        const std::vector<double> v = random_majorized(lam, rng);
        REQUIRE(is_majorized(v, lam));
        // Horn gives a unitary whose unistochastic image maps lam to v
        const UnitaryMatrix u = horn_construct(v, lam);
        const DoublyStochasticMatrix q = unistochastic(u);
        std::vector<double> qv(5, 0.0);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) qv[i] += q.at(i, j) * lam[j];
        for (int i = 0; i < 5; ++i) CHECK(std::abs(qv[i] - v[i]) <= 1e-8);
    }
}
