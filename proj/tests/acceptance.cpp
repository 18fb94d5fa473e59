// Acceptance gate: one self-contained check per release criterion, each
// printed as a single [PASS]/[FAIL] line. The process exits nonzero if any
// criterion fails, so CI can hang a gate on it directly.
//
// Every tolerance and budget is pinned here as a named constant; nothing is
// read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "polar/bench.hpp"
#include "polar/inclexcl.hpp"
#include "polar/polarize.hpp"
#include "polar/polynomial.hpp"
#include "polar/rng.hpp"
#include "polar/scalar.hpp"
#include "polar/symtensor.hpp"
#include "polar/wick.hpp"

namespace {

using polar::Covariance;
using polar::DiagonalFn;
using polar::FieldDescriptor;
using polar::Polynomial;
using polar::Scalar;
using polar::SetSystem;
using polar::SplitMix64;
using polar::SymMultiMap;
using polar::Vector;

using Clock = std::chrono::steady_clock;

// Pinned budgets and tolerances.
constexpr double kEngineSuiteBudgetSeconds = 60.0;
constexpr double kProductIdentityBudgetSeconds = 30.0;
constexpr double kMonteCarloStdErrBand = 4.0;
constexpr std::uint64_t kMonteCarloSamples = 1000000;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f s", s);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Six engines agree with n! * eval_direct on 500 random rational
//    instances, n in 1..6 and d in 1..4, exactly, within the time budget.
// ---------------------------------------------------------------------------
bool engine_agreement(std::string& detail) {
    const auto start = Clock::now();
    const FieldDescriptor q = FieldDescriptor::rationals();
    SplitMix64 seeds(20260101);
    for (int i = 0; i < 500; ++i) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(seeds.below(6));
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(seeds.below(4));
        const SymMultiMap u = polar::random_symmetric(n, d, q, seeds.next());
        const DiagonalFn diag = u.diagonal();
        std::vector<Vector> xs;
        for (std::uint32_t k = 0; k < n; ++k) {
            xs.push_back(polar::random_vector(d, q, seeds.next()));
        }
        const Vector x0 = polar::random_vector(d, q, seeds.next());
        const Scalar expect =
            u.eval_direct(xs) * Scalar::from_integer(polar::factorial(n), q);
        const Scalar two_n = Scalar::from_integer(1ll << n, q);

        if (polar::polarize_operator(diag, xs) != expect ||
            polar::polarize_subset_sum(diag, xs) != expect ||
            polar::polarize_subset_sum_gray(diag, xs) != expect ||
            polar::polarize_offset(diag, xs, x0) != expect ||
            polar::polarize_signed(diag, xs) != expect * two_n ||
            polar::coefficient_extraction(u, xs) != expect) {
            detail = "mismatch at instance " + std::to_string(i) + " (n=" +
                     std::to_string(n) + ", d=" + std::to_string(d) + ")";
            return false;
        }
    }
    const double elapsed = seconds_since(start);
    detail = "500 instances in " + format_seconds(elapsed);
    if (elapsed >= kEngineSuiteBudgetSeconds) {
        detail += " (budget " + format_seconds(kEngineSuiteBudgetSeconds) + " exceeded)";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 2. from_polynomial(to_polynomial(u)) reproduces u coefficient-wise on 200
//    random tensors, n <= 5 and d <= 4, exactly.
// ---------------------------------------------------------------------------
bool recovery_round_trip(std::string& detail) {
    const FieldDescriptor q = FieldDescriptor::rationals();
    SplitMix64 seeds(20260102);
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(seeds.below(5));
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(seeds.below(4));
        const SymMultiMap u = polar::random_symmetric(n, d, q, seeds.next());
        if (SymMultiMap::from_polynomial(u.to_polynomial(), n, d) != u) {
            detail = "round trip broke at instance " + std::to_string(i);
            return false;
        }
    }
    detail = "200 round trips";
    return true;
}

// ---------------------------------------------------------------------------
// 3. Over GF(2) and GF(3) with n >= characteristic the undivided identity
//    still holds mod p, while dividing by n! is refused.
// ---------------------------------------------------------------------------
bool characteristic_behavior(std::string& detail) {
    SplitMix64 seeds(20260103);
    int checked = 0;
    for (std::uint64_t p : {2ull, 3ull}) {
        const FieldDescriptor f = FieldDescriptor::gf(p);
        for (std::uint32_t n = static_cast<std::uint32_t>(p);
             n <= static_cast<std::uint32_t>(p) + 1; ++n) {
            for (int i = 0; i < 50; ++i) {
                const std::uint32_t d = 1 + static_cast<std::uint32_t>(seeds.below(3));
                const SymMultiMap u = polar::random_symmetric(n, d, f, seeds.next());
                const DiagonalFn diag = u.diagonal();
                std::vector<Vector> xs;
                for (std::uint32_t k = 0; k < n; ++k) {
                    xs.push_back(polar::random_vector(d, f, seeds.next()));
                }
                const Scalar expect =
                    u.eval_direct(xs) * Scalar::from_integer(polar::factorial(n), f);
                if (polar::polarize_operator(diag, xs) != expect ||
                    polar::polarize_subset_sum(diag, xs) != expect) {
                    detail = "identity failed mod " + std::to_string(p);
                    return false;
                }
                bool refused = false;
                try {
                    (void)polar::recover(diag, xs, polar::Method::subset);
                } catch (const polar::CharacteristicDividesFactorial&) {
                    refused = true;
                }
                if (!refused) {
                    detail = "recover did not refuse GF(" + std::to_string(p) +
                             ") at n=" + std::to_string(n);
                    return false;
                }
                ++checked;
            }
        }
    }
    detail = std::to_string(checked) + " instances over GF(2) and GF(3)";
    return true;
}

// ---------------------------------------------------------------------------
// 4. The subset-sum and sign-flip outputs are invariant under every
//    permutation of the arguments, n <= 4, 50 instances.
// ---------------------------------------------------------------------------
bool permutation_symmetry(std::string& detail) {
    const FieldDescriptor q = FieldDescriptor::rationals();
    SplitMix64 seeds(20260104);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t n = 2 + static_cast<std::uint32_t>(seeds.below(3));
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(seeds.below(3));
        const SymMultiMap u = polar::random_symmetric(n, d, q, seeds.next());
        const DiagonalFn diag = u.diagonal();
        std::vector<Vector> xs;
        for (std::uint32_t k = 0; k < n; ++k) {
            xs.push_back(polar::random_vector(d, q, seeds.next()));
        }
        const Scalar subset = polar::polarize_subset_sum(diag, xs);
        const Scalar sign = polar::polarize_signed(diag, xs);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<Vector> permuted;
            permuted.reserve(n);
            for (std::size_t k : perm) {
                permuted.push_back(xs[k]);
            }
            if (polar::polarize_subset_sum(diag, permuted) != subset ||
                polar::polarize_signed(diag, permuted) != sign) {
                detail = "permutation changed the value at instance " + std::to_string(i);
                return false;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    detail = "50 instances, all permutations";
    return true;
}

// ---------------------------------------------------------------------------
// 5. The offset form is independent of the base point (50 instances x 20
//    base points), and the fully differenced diagonal checks as constant.
// ---------------------------------------------------------------------------
bool base_point_independence(std::string& detail) {
    const FieldDescriptor q = FieldDescriptor::rationals();
    SplitMix64 seeds(20260105);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(seeds.below(4));
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(seeds.below(3));
        const SymMultiMap u = polar::random_symmetric(n, d, q, seeds.next());
        const DiagonalFn diag = u.diagonal();
        std::vector<Vector> xs;
        for (std::uint32_t k = 0; k < n; ++k) {
            xs.push_back(polar::random_vector(d, q, seeds.next()));
        }
        const Scalar reference = polar::polarize_offset(diag, xs, Vector::zero(q, d));
        for (int j = 0; j < 20; ++j) {
            const Vector x0 = polar::random_vector(d, q, seeds.next());
            if (polar::polarize_offset(diag, xs, x0) != reference) {
                detail = "base point changed the value at instance " + std::to_string(i);
                return false;
            }
        }
        std::vector<Vector> probes;
        for (int j = 0; j < 10; ++j) {
            probes.push_back(polar::random_vector(d, q, seeds.next()));
        }
        if (!polar::constant_check(diag, xs, probes)) {
            detail = "differenced diagonal not constant at instance " + std::to_string(i);
            return false;
        }
    }
    detail = "50 instances x 20 base points, 10 probes each";
    return true;
}

// ---------------------------------------------------------------------------
// 6. The symbolic product identity expands to n! a1...an for n = 1..8, with
//    the n = 8 expansion inside its budget.
// ---------------------------------------------------------------------------
bool product_identity(std::string& detail) {
    for (std::uint32_t n = 1; n <= 7; ++n) {
        if (!polar::nelson_identity_check(n)) {
            detail = "expansion mismatch at n=" + std::to_string(n);
            return false;
        }
    }
    const auto start = Clock::now();
    const bool top = polar::nelson_identity_check(8);
    const double elapsed = seconds_since(start);
    if (!top) {
        detail = "expansion mismatch at n=8";
        return false;
    }
    detail = "n=1..8, n=8 in " + format_seconds(elapsed);
    if (elapsed >= kProductIdentityBudgetSeconds) {
        detail += " (budget " + format_seconds(kProductIdentityBudgetSeconds) + " exceeded)";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// 7. Gaussian moment suite: double-factorial matching counts, vanishing odd
//    moments, classic single-variable values, diagonal consistency, and a
//    seeded Monte Carlo cross-check within the pinned band.
// ---------------------------------------------------------------------------
bool gaussian_moments(std::string& detail) {
    const std::vector<std::pair<std::uint32_t, std::uint64_t>> counts{
        {2, 1}, {4, 3}, {6, 15}, {8, 105}, {10, 945}, {12, 10395}};
    for (const auto& [n, expect] : counts) {
        if (polar::pair_partitions(n).size() != expect) {
            detail = "matching count wrong at n=" + std::to_string(n);
            return false;
        }
    }

    const Covariance id1 = Covariance::identity(1);
    if (!polar::isserlis(id1, {0}).is_zero() || !polar::isserlis(id1, {0, 0, 0}).is_zero() ||
        !polar::isserlis(Covariance::identity(2), {0, 0, 1}).is_zero()) {
        detail = "odd moment did not vanish";
        return false;
    }
    if (polar::isserlis(id1, {0, 0, 0, 0}) != Scalar::rational(3) ||
        polar::isserlis(id1, {0, 0, 0, 0, 0, 0}) != Scalar::rational(15)) {
        detail = "single-variable moments off";
        return false;
    }

    SplitMix64 seeds(20260107);
    for (int i = 0; i < 50; ++i) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(seeds.below(3));
        std::vector<std::vector<Scalar>> rows(d, std::vector<Scalar>(d, Scalar::rational(0)));
        for (std::uint32_t r = 0; r < d; ++r) {
            for (std::uint32_t c = r; c < d; ++c) {
                const Scalar v = Scalar::rational(seeds.range(-4, 4),
                                                  static_cast<unsigned long>(seeds.range(1, 3)));
                rows[r][c] = v;
                rows[c][r] = v;
            }
        }
        const Covariance cov(std::move(rows));
        std::vector<Scalar> weights;
        for (std::uint32_t k = 0; k < d; ++k) {
            weights.push_back(Scalar::rational(seeds.range(-3, 3),
                                               static_cast<unsigned long>(seeds.range(1, 3))));
        }
        const std::uint32_t n = seeds.below(2) == 0 ? 4 : 6;
        if (!polar::isserlis_diagonal_consistency(cov, weights, n)) {
            detail = "diagonal consistency failed at case " + std::to_string(i);
            return false;
        }
    }

    // Five pinned Monte Carlo cases: (covariance, indices, seed).
    struct McCase {
        Covariance cov;
        std::vector<std::uint32_t> idx;
        std::uint64_t seed;
    };
    const Covariance half2({{Scalar::rational(1), Scalar::rational(1, 2)},
                            {Scalar::rational(1, 2), Scalar::rational(1)}});
    const Covariance wide({{Scalar::rational(4)}});
    const Covariance dominant({{Scalar::rational(1), Scalar::rational(1, 2), Scalar::rational(1, 3)},
                               {Scalar::rational(1, 2), Scalar::rational(1), Scalar::rational(1, 4)},
                               {Scalar::rational(1, 3), Scalar::rational(1, 4), Scalar::rational(1)}});
    const McCase cases[] = {
        {Covariance::identity(1), {0, 0, 0, 0}, 1001},
        {Covariance::identity(1), {0, 0}, 1002},
        {half2, {0, 0, 1, 1}, 1003},
        {wide, {0, 0, 0, 0}, 1004},
        {dominant, {0, 1, 2, 2}, 1005},
    };
    for (std::size_t c = 0; c < std::size(cases); ++c) {
        const McCase& mc = cases[c];
        const Scalar exact = polar::isserlis(mc.cov, mc.idx);
        const auto est = polar::monte_carlo_estimate(mc.cov, mc.idx, kMonteCarloSamples, mc.seed);
        const double gap = std::abs(exact.rat().get_d() - est.mean);
        if (est.stderr_of_mean <= 0.0 || gap > kMonteCarloStdErrBand * est.stderr_of_mean) {
            std::ostringstream os;
            os << "Monte Carlo case " << c << " off by " << gap / est.stderr_of_mean
               << " stderr";
            detail = os.str();
            return false;
        }
    }
    detail = "counts, moments, 50 consistency cases, 5 Monte Carlo cases";
    return true;
}

// ---------------------------------------------------------------------------
// 8. Inclusion-exclusion: direct count equals the alternating sum on 200
//    random set systems, the indicator identity holds pointwise, and the
//    shift expansion matches the indicator expansion as signed multisets.
// ---------------------------------------------------------------------------
bool inclusion_exclusion_suite(std::string& detail) {
    SplitMix64 rng(20260108);
    for (int i = 0; i < 200; ++i) {
        const std::size_t universe = 1 + rng.below(20);
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(6));
        std::vector<std::string> labels;
        for (std::size_t e = 0; e < universe; ++e) {
            labels.push_back("e" + std::to_string(e));
        }
        std::vector<std::vector<std::string>> subsets(n);
        for (std::uint32_t s = 0; s < n; ++s) {
            for (const std::string& e : labels) {
                if (rng.below(3) == 0) {
                    subsets[s].push_back(e);
                }
            }
        }
        const SetSystem system(labels, subsets);
        if (polar::complement_intersection_count(system) != polar::inclusion_exclusion(system)) {
            detail = "counting identity failed at system " + std::to_string(i);
            return false;
        }
        if (!polar::verify_indicator_identity(system)) {
            detail = "indicator identity failed at system " + std::to_string(i);
            return false;
        }
    }
    for (std::uint32_t n = 1; n <= 6; ++n) {
        if (!polar::shift_terms_match_indicator(n)) {
            detail = "term lists diverged at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "200 systems, term lists for n=1..6";
    return true;
}

// ---------------------------------------------------------------------------
// 9. Gray-code enumeration: exactly 2^16 - 1 vector updates against the
//    naive engine's 16 * 2^15 additions on the same n=16, d=4 instance,
//    identical results, strictly faster wall clock.
// ---------------------------------------------------------------------------
bool gray_code_performance(std::string& detail) {
    polar::BenchConfig config;
    config.n_min = 16;
    config.n_max = 16;
    config.dim = 4;
    config.repetitions = 3;
    config.seed = 2026;
    const std::vector<polar::BenchRow> rows = polar::run_bench(config);
    if (rows.size() != 1) {
        detail = "expected one bench row";
        return false;
    }
    const polar::BenchRow& row = rows[0];
    const std::uint64_t expected_gray = (std::uint64_t{1} << 16) - 1;
    const std::uint64_t expected_naive = std::uint64_t{16} << 15;
    if (row.gray_vector_ops != expected_gray) {
        detail = "gray update count " + std::to_string(row.gray_vector_ops);
        return false;
    }
    if (row.naive_vector_ops != expected_naive) {
        detail = "naive addition count " + std::to_string(row.naive_vector_ops);
        return false;
    }
    if (!row.results_equal) {
        detail = "engines disagreed";
        return false;
    }
    if (row.gray_ns >= row.naive_ns) {
        detail = "gray " + std::to_string(row.gray_ns) + " ns not below naive " +
                 std::to_string(row.naive_ns) + " ns";
        return false;
    }
    std::ostringstream os;
    os << "65535 vs 524288 ops, gray " << row.gray_ns / 1000000.0 << " ms vs naive "
       << row.naive_ns / 1000000.0 << " ms";
    detail = os.str();
    return true;
}

// ---------------------------------------------------------------------------
// 10. The constant-derivative lemma verifies on 500 random univariate
//     polynomials, half of them with the constant-derivative hypothesis
//     forced by construction.
// ---------------------------------------------------------------------------
bool derivative_lemma(std::string& detail) {
    const FieldDescriptor q = FieldDescriptor::rationals();
    SplitMix64 rng(20260110);
    for (int i = 0; i < 500; ++i) {
        Polynomial p(q);
        // Even cases: degree <= 1, so the derivative is a constant and the
        // lemma's equation is load-bearing. Odd cases: any small degree.
        const std::uint32_t deg =
            (i % 2 == 0) ? static_cast<std::uint32_t>(rng.below(2))
                         : static_cast<std::uint32_t>(rng.below(6));
        for (std::uint32_t e = 0; e <= deg; ++e) {
            p.add_term({{"x", e}}, Scalar::rational(rng.range(-9, 9),
                                                    static_cast<unsigned long>(rng.range(1, 9))));
        }
        if (!polar::lemma_check(p)) {
            detail = "lemma failed at polynomial " + std::to_string(i);
            return false;
        }
    }
    detail = "500 polynomials";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {"engine agreement, 500 rational instances", engine_agreement},
        {"tensor/polynomial round trip, 200 instances", recovery_round_trip},
        {"small-characteristic behavior over GF(2), GF(3)", characteristic_behavior},
        {"permutation symmetry, all orderings", permutation_symmetry},
        {"base-point independence and constancy", base_point_independence},
        {"symbolic product identity, n=1..8", product_identity},
        {"Gaussian moment suite", gaussian_moments},
        {"inclusion-exclusion suite", inclusion_exclusion_suite},
        {"Gray-code enumeration performance", gray_code_performance},
        {"constant-derivative lemma, 500 polynomials", derivative_lemma},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
        }
        if (!pass) {
            ++failures;
        }
        std::printf("[%s] %2d. %s%s%s\n", pass ? "PASS" : "FAIL", index, c.name,
                    detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
    }
    if (failures != 0) {
        std::printf("%d of %d criteria failed\n", failures, index);
        return 1;
    }
    std::printf("all %d criteria passed\n", index);
    return 0;
}
