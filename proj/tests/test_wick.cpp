#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "polar/rng.hpp"
#include "polar/wick.hpp"

using polar::Covariance;
using polar::PairPartition;
using polar::Scalar;
using polar::SplitMix64;

namespace {

Scalar rat(long num, long den = 1) {
    return Scalar::rational(num, static_cast<unsigned long>(den));
}

Covariance cov2_halves() {
    return Covariance({{rat(1), rat(1, 2)}, {rat(1, 2), rat(1)}});
}

// Independent moment oracle: peel off position 0 against every partner and
// recurse on the rest. Mathematically the same sum, but it never builds the
// matching list the production code enumerates.
Scalar wick_recursive(const Covariance& cov, const std::vector<std::uint32_t>& idx) {
    if (idx.empty()) {
        return rat(1);
    }
    if (idx.size() % 2 == 1) {
        return rat(0);
    }
    Scalar acc = rat(0);
    for (std::size_t j = 1; j < idx.size(); ++j) {
        std::vector<std::uint32_t> rest;
        for (std::size_t k = 1; k < idx.size(); ++k) {
            if (k != j) {
                rest.push_back(idx[k]);
            }
        }
        acc += cov.entry(idx[0], idx[j]) * wick_recursive(cov, rest);
    }
    return acc;
}

// (n-1)!! by the naked recurrence, as a counting oracle.
std::uint64_t double_factorial_count(std::uint32_t n) {
    return n == 0 ? 1 : (n - 1) * double_factorial_count(n - 2);
}

}  // namespace

TEST_CASE("matching enumeration has double-factorial size") {
    CHECK(polar::pair_partitions(0).size() == 1);
    CHECK(polar::pair_partitions(2).size() == 1);
    CHECK(polar::pair_partitions(4).size() == 3);
    CHECK(polar::pair_partitions(6).size() == 15);
    CHECK(polar::pair_partitions(8).size() == 105);
    CHECK(polar::pair_partitions(10).size() == 945);
    CHECK(polar::pair_partitions(12).size() == 10395);
    for (std::uint32_t n : {2u, 4u, 6u, 8u, 10u}) {
        CHECK(polar::pair_partitions(n).size() == double_factorial_count(n));
    }
    CHECK_THROWS_AS((void)polar::pair_partitions(3), polar::OddOrder);
    CHECK_THROWS_AS((void)polar::pair_partitions(14), std::invalid_argument);
    CHECK(polar::pair_partitions(14, 14).size() == 135135);
}

TEST_CASE("the three matchings of four points are listed canonically") {
    const auto ms = polar::pair_partitions(4);
    REQUIRE(ms.size() == 3);
    CHECK(ms[0] == PairPartition{{{0, 1}, {2, 3}}});
    CHECK(ms[1] == PairPartition{{{0, 2}, {1, 3}}});
    CHECK(ms[2] == PairPartition{{{0, 3}, {1, 2}}});
}

TEST_CASE("every enumerated matching is a distinct perfect matching") {
    for (std::uint32_t n : {2u, 6u, 8u}) {
        const auto ms = polar::pair_partitions(n);
        std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> distinct;
        for (const PairPartition& m : ms) {
            REQUIRE(m.pairs.size() == n / 2);
            std::set<std::uint32_t> covered;
            std::uint32_t prev_first = 0;
            for (std::size_t i = 0; i < m.pairs.size(); ++i) {
                const auto [a, b] = m.pairs[i];
                CHECK(a < b);
                CHECK(b < n);
                if (i > 0) {
                    CHECK(prev_first < a);
                }
                prev_first = a;
                covered.insert(a);
                covered.insert(b);
            }
            CHECK(covered.size() == n);
            distinct.insert(m.pairs);
        }
        CHECK(distinct.size() == ms.size());
    }
}

TEST_CASE("quartic moment of a standard Gaussian is three") {
    const Covariance id = Covariance::identity(1);
    CHECK(polar::isserlis(id, {0, 0, 0, 0}) == rat(3));
    CHECK(polar::isserlis(id, {0, 0, 0, 0, 0, 0}) == rat(15));
    CHECK(polar::isserlis(id, {0, 0}) == rat(1));
}

TEST_CASE("odd moments vanish") {
    const Covariance id = Covariance::identity(2);
    CHECK(polar::isserlis(id, {0}).is_zero());
    CHECK(polar::isserlis(id, {0, 0, 0}).is_zero());
    CHECK(polar::isserlis(id, {0, 1, 1, 0, 1}).is_zero());
}

TEST_CASE("independent coordinates have product moment zero") {
    const Covariance id = Covariance::identity(4);
    CHECK(polar::isserlis(id, {0, 1, 2, 3}).is_zero());
    CHECK(polar::isserlis(id, {0, 0, 1, 1}) == rat(1));
}

TEST_CASE("correlated pair has the hand-computed mixed moment") {
    // Three pairings: E00*E11 + 2*E01^2 = 1 + 2/4 = 3/2.
    CHECK(polar::isserlis(cov2_halves(), {0, 0, 1, 1}) == rat(3, 2));
}

TEST_CASE("variance scale enters moments through the double factorial") {
    const Covariance scaled({{rat(9, 4)}});
    // E(x^4) = 3 v^2 with v = 9/4.
    CHECK(polar::isserlis(scaled, {0, 0, 0, 0}) == rat(243, 16));
}

TEST_CASE("isserlis agrees with the peel-off recursion on random inputs") {
    SplitMix64 rng(30001);
    for (int i = 0; i < 25; ++i) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(3));
        // Random symmetric rational matrix; the algebraic identity needs no
        // positive semidefiniteness.
        std::vector<std::vector<Scalar>> rows(d, std::vector<Scalar>(d, rat(0)));
        for (std::uint32_t r = 0; r < d; ++r) {
            for (std::uint32_t c = r; c < d; ++c) {
                const Scalar v = rat(rng.range(-5, 5), rng.range(1, 4));
                rows[r][c] = v;
                rows[c][r] = v;
            }
        }
        const Covariance cov(std::move(rows));
        const std::uint32_t n = rng.below(2) == 0 ? 4 : 6;
        std::vector<std::uint32_t> idx;
        for (std::uint32_t k = 0; k < n; ++k) {
            idx.push_back(static_cast<std::uint32_t>(rng.below(d)));
        }
        CHECK(polar::isserlis(cov, idx) == wick_recursive(cov, idx));
    }
}

TEST_CASE("single-variable moments") {
    CHECK(polar::gaussian_moment_single(0) == rat(1));
    CHECK(polar::gaussian_moment_single(1).is_zero());
    CHECK(polar::gaussian_moment_single(3).is_zero());
    CHECK(polar::gaussian_moment_single(4) == rat(3));
    CHECK(polar::gaussian_moment_single(6) == rat(15));
    CHECK(polar::gaussian_moment_single(8) == rat(105));
}

TEST_CASE("diagonal consistency ties mixed moments to the variance") {
    const Covariance cov = cov2_halves();
    CHECK(polar::isserlis_diagonal_consistency(cov, {rat(1), rat(1)}, 4));
    CHECK(polar::isserlis_diagonal_consistency(cov, {rat(2), rat(-1, 3)}, 6));
    CHECK_THROWS_AS((void)polar::isserlis_diagonal_consistency(cov, {rat(1), rat(1)}, 3),
                    polar::OddOrder);

    SplitMix64 rng(30002);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(rng.below(3));
        std::vector<std::vector<Scalar>> rows(d, std::vector<Scalar>(d, rat(0)));
        for (std::uint32_t r = 0; r < d; ++r) {
            for (std::uint32_t c = r; c < d; ++c) {
                const Scalar v = rat(rng.range(-4, 4), rng.range(1, 3));
                rows[r][c] = v;
                rows[c][r] = v;
            }
        }
        const Covariance cov_i(std::move(rows));
        std::vector<Scalar> weights;
        for (std::uint32_t k = 0; k < d; ++k) {
            weights.push_back(rat(rng.range(-3, 3), rng.range(1, 3)));
        }
        const std::uint32_t n = rng.below(2) == 0 ? 4 : 6;
        CHECK(polar::isserlis_diagonal_consistency(cov_i, weights, n));
    }
}

TEST_CASE("covariance construction validates shape and symmetry") {
    CHECK_THROWS_AS(Covariance({{rat(1), rat(2)}, {rat(3), rat(1)}}), polar::ParseError);
    CHECK_THROWS_AS(Covariance({{rat(1), rat(2)}}), polar::DimensionMismatch);
    CHECK_THROWS_AS(Covariance({}), polar::DimensionMismatch);
    const Covariance id = Covariance::identity(3);
    CHECK(id.entry(1, 1) == rat(1));
    CHECK(id.entry(0, 2).is_zero());
    CHECK_THROWS_AS((void)id.entry(0, 3), polar::IndexOutOfRange);
}

TEST_CASE("positive semidefiniteness is decided exactly") {
    CHECK(polar::is_positive_semidefinite(Covariance::identity(3)));
    CHECK(polar::is_positive_semidefinite(cov2_halves()));
    // Rank-one: PSD with zero determinant.
    CHECK(polar::is_positive_semidefinite(Covariance({{rat(1), rat(1)}, {rat(1), rat(1)}})));
    // Indefinite: off-diagonal dominates.
    CHECK(!polar::is_positive_semidefinite(Covariance({{rat(1), rat(2)}, {rat(2), rat(1)}})));
    // Zero leading entry hides the negative direction from leading minors;
    // the principal minor {1} catches it.
    CHECK(!polar::is_positive_semidefinite(Covariance({{rat(0), rat(0)}, {rat(0), rat(-1)}})));
    CHECK(polar::is_positive_semidefinite(Covariance({{rat(0), rat(0)}, {rat(0), rat(1)}})));
}

TEST_CASE("monte carlo estimates are deterministic and thread-invariant") {
    const Covariance cov = cov2_halves();
    const std::vector<std::uint32_t> idx{0, 0, 1, 1};
    const auto serial = polar::monte_carlo_estimate(cov, idx, 20000, 99, false);
    const auto parallel = polar::monte_carlo_estimate(cov, idx, 20000, 99, true);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.stderr_of_mean == parallel.stderr_of_mean);
    CHECK(serial.samples == 20000);

    const auto again = polar::monte_carlo_estimate(cov, idx, 20000, 99, false);
    CHECK(again.mean == serial.mean);

    const auto other_seed = polar::monte_carlo_estimate(cov, idx, 20000, 100, false);
    CHECK(other_seed.mean != serial.mean);
}

TEST_CASE("monte carlo lands near the exact moment") {
    const Covariance id = Covariance::identity(1);
    const auto mc = polar::monte_carlo_estimate(id, {0, 0}, 50000, 7);
    CHECK(mc.stderr_of_mean > 0.0);
    CHECK(std::abs(mc.mean - 1.0) <= 4.0 * mc.stderr_of_mean);

    const auto quartic = polar::monte_carlo_estimate(id, {0, 0, 0, 0}, 50000, 8);
    CHECK(std::abs(quartic.mean - 3.0) <= 4.0 * quartic.stderr_of_mean);
}

TEST_CASE("monte carlo validates its inputs") {
    const Covariance id = Covariance::identity(2);
    CHECK_THROWS_AS((void)polar::monte_carlo_estimate(id, {0, 2}, 2000, 1),
                    polar::IndexOutOfRange);
    CHECK_THROWS_AS((void)polar::monte_carlo_estimate(id, {0, 0}, 999, 1),
                    std::invalid_argument);
    const Covariance indefinite({{rat(1), rat(2)}, {rat(2), rat(1)}});
    CHECK_THROWS_AS((void)polar::monte_carlo_estimate(indefinite, {0, 0}, 2000, 1),
                    polar::NotPositiveSemidefinite);
}
