#ifndef POLAR_WICK_HPP
#define POLAR_WICK_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polar/errors.hpp"
#include "polar/scalar.hpp"

namespace polar {

// A perfect matching of the positions 0..n-1. Canonical form: each pair
// (a, b) has a < b, and pairs are sorted by their first element.
struct PairPartition {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    bool operator==(const PairPartition&) const = default;
};

// All perfect matchings of {0,...,n-1} in canonical order; (n-1)!! of them.
// n = 0 yields the single empty matching. Throws OddOrder for odd n and
// refuses n beyond the bound ((n-1)!! grows factorially).
std::vector<PairPartition> pair_partitions(std::uint32_t n, std::uint32_t max_order = 12);

// Symmetric d x d matrix of rational entries: entry(i, j) = E(x_i x_j).
class Covariance {
public:
    explicit Covariance(std::vector<std::vector<Scalar>> rows);

    static Covariance identity(std::uint32_t dim);

    std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
    const Scalar& entry(std::uint32_t i, std::uint32_t j) const;
    const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

private:
    std::vector<std::vector<Scalar>> rows_;
};

// E(x_{i1} ... x_{in}) for centered jointly Gaussian variables: 0 for odd n,
// otherwise the sum over all pairings of the products of covariances.
Scalar isserlis(const Covariance& cov, const std::vector<std::uint32_t>& idx);

// E(x^n) for x standard Gaussian: (n-1)(n-3)...1 for even n, 0 for odd n.
// Cross-checked against the matching count whenever n is within the
// enumeration bound.
Scalar gaussian_moment_single(std::uint32_t n);

// Checks that E(y^n) for y = sum of w_i x_i comes out the same via
// (a) the single-variable moment with Var(y) = w^T cov w, and (b) the
// multilinear expansion into component moments. n must be even.
bool isserlis_diagonal_consistency(const Covariance& cov, const std::vector<Scalar>& weights,
                                   std::uint32_t n);

// Exact test: every principal minor of the matrix is >= 0.
bool is_positive_semidefinite(const Covariance& cov);

struct MonteCarloResult {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::uint64_t samples = 0;
};

// Samples the index product over draws of a centered Gaussian vector with
// the given covariance. Deterministic per seed: samples are grouped into
// fixed 4096-draw blocks, each with its own derived PRNG stream, and block
// results combine in block order — so the parallel and serial paths return
// bit-identical results.
MonteCarloResult monte_carlo_estimate(const Covariance& cov,
                                      const std::vector<std::uint32_t>& idx,
                                      std::uint64_t samples, std::uint64_t seed,
                                      bool parallel = true);

}  // namespace polar

#endif
