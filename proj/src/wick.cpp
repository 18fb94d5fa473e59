#include "polar/wick.hpp"

#include <cmath>
#include <stdexcept>

#include "polar/rng.hpp"

namespace polar {

namespace {

void enumerate_matchings(std::vector<std::uint32_t>& unpaired, PairPartition& current,
                         std::vector<PairPartition>& out) {
    if (unpaired.empty()) {
        out.push_back(current);
        return;
    }
    // Pair the smallest unpaired position with each remaining one; the
    // recursion then visits matchings in canonical order with no duplicates.
    const std::uint32_t a = unpaired.front();
    for (std::size_t pick = 1; pick < unpaired.size(); ++pick) {
        const std::uint32_t b = unpaired[pick];
        std::vector<std::uint32_t> rest;
        rest.reserve(unpaired.size() - 2);
        for (std::size_t i = 1; i < unpaired.size(); ++i) {
            if (i != pick) {
                rest.push_back(unpaired[i]);
            }
        }
        current.pairs.emplace_back(a, b);
        enumerate_matchings(rest, current, out);
        current.pairs.pop_back();
    }
}

}  // namespace

std::vector<PairPartition> pair_partitions(std::uint32_t n, std::uint32_t max_order) {
    if (n % 2 != 0) {
        throw OddOrder("no perfect matchings of an odd number of positions");
    }
    if (n > max_order) {
        throw std::invalid_argument("matching enumeration bounded at order " +
                                    std::to_string(max_order));
    }
    std::vector<std::uint32_t> positions;
    positions.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        positions.push_back(i);
    }
    std::vector<PairPartition> out;
    PairPartition current;
    enumerate_matchings(positions, current, out);
    return out;
}

Covariance::Covariance(std::vector<std::vector<Scalar>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
        throw DimensionMismatch("covariance matrix must have dimension >= 1");
    }
    const std::size_t d = rows_.size();
    const FieldDescriptor rational = FieldDescriptor::rationals();
    for (const auto& row : rows_) {
        if (row.size() != d) {
            throw DimensionMismatch("covariance matrix must be square");
        }
        for (const Scalar& v : row) {
            if (v.field() != rational) {
                throw FieldMismatch("covariance entries must be rational");
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (rows_[i][j] != rows_[j][i]) {
                throw ParseError("covariance matrix is not symmetric at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

Covariance Covariance::identity(std::uint32_t dim) {
    std::vector<std::vector<Scalar>> rows(dim, std::vector<Scalar>(dim, Scalar::rational(0)));
    for (std::uint32_t i = 0; i < dim; ++i) {
        rows[i][i] = Scalar::rational(1);
    }
    return Covariance(std::move(rows));
}

const Scalar& Covariance::entry(std::uint32_t i, std::uint32_t j) const {
    if (i >= dim() || j >= dim()) {
        throw IndexOutOfRange("covariance index out of range");
    }
    return rows_[i][j];
}

Scalar isserlis(const Covariance& cov, const std::vector<std::uint32_t>& idx) {
    for (std::uint32_t i : idx) {
        if (i >= cov.dim()) {
            throw IndexOutOfRange("variable index " + std::to_string(i) +
                                  " out of range for dimension " + std::to_string(cov.dim()));
        }
    }
    const std::uint32_t n = static_cast<std::uint32_t>(idx.size());
    if (n % 2 != 0) {
        return Scalar::rational(0);
    }
    Scalar total = Scalar::rational(0);
    for (const PairPartition& pp : pair_partitions(n)) {
        Scalar prod = Scalar::rational(1);
        for (const auto& [a, b] : pp.pairs) {
            prod *= cov.entry(idx[a], idx[b]);
        }
        total += prod;
    }
    return total;
}

Scalar gaussian_moment_single(std::uint32_t n) {
    if (n % 2 != 0) {
        return Scalar::rational(0);
    }
    mpz_class product = 1;
    for (std::uint32_t k = n; k >= 2; k -= 2) {
        product *= (k - 1);
    }
    const Scalar moment = Scalar::rational(mpq_class(product));
    if (n <= 12) {
        const std::size_t count = pair_partitions(n).size();
        if (Scalar::from_integer(mpz_class(static_cast<unsigned long>(count)),
                                 FieldDescriptor::rationals()) != moment) {
            throw std::logic_error("double-factorial moment disagrees with matching count");
        }
    }
    return moment;
}

bool isserlis_diagonal_consistency(const Covariance& cov, const std::vector<Scalar>& weights,
                                   std::uint32_t n) {
    if (n % 2 != 0) {
        throw OddOrder("diagonal consistency check needs even n");
    }
    const std::uint32_t d = cov.dim();
    if (weights.size() != d) {
        throw DimensionMismatch("weight vector length does not match covariance dimension");
    }
    for (const Scalar& w : weights) {
        if (w.field() != FieldDescriptor::rationals()) {
            throw FieldMismatch("weights must be rational");
        }
    }
    // Route (a): y is Gaussian with variance w^T cov w.
    Scalar variance = Scalar::rational(0);
    for (std::uint32_t i = 0; i < d; ++i) {
        for (std::uint32_t j = 0; j < d; ++j) {
            variance += weights[i] * weights[j] * cov.entry(i, j);
        }
    }
    const Scalar route_a = gaussian_moment_single(n) * variance.pow(n / 2);
    // Route (b): expand E(y^n) multilinearly over component indices.
    Scalar route_b = Scalar::rational(0);
    std::vector<std::uint32_t> tuple(n, 0);
    while (true) {
        Scalar w_prod = Scalar::rational(1);
        for (std::uint32_t k = 0; k < n; ++k) {
            w_prod *= weights[tuple[k]];
        }
        if (!w_prod.is_zero()) {
            route_b += w_prod * isserlis(cov, tuple);
        }
        std::size_t pos = n;
        while (pos > 0 && tuple[pos - 1] == d - 1) {
            tuple[--pos] = 0;
        }
        if (pos == 0) {
            break;
        }
        ++tuple[pos - 1];
    }
    return route_a == route_b;
}

namespace {

// Exact determinant by Gaussian elimination over the rationals (the
// matrix is tiny: d <= 8 in practice).
Scalar rational_determinant(std::vector<std::vector<Scalar>> m) {
    const std::size_t d = m.size();
    Scalar det = Scalar::rational(1);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && m[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == d) {
            return Scalar::rational(0);
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        const Scalar inv = m[col][col].inverse();
        for (std::size_t row = col + 1; row < d; ++row) {
            if (m[row][col].is_zero()) {
                continue;
            }
            const Scalar factor = m[row][col] * inv;
            for (std::size_t k = col; k < d; ++k) {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    return det;
}

}  // namespace

bool is_positive_semidefinite(const Covariance& cov) {
    const std::uint32_t d = cov.dim();
    // A symmetric matrix is PSD iff every principal minor is >= 0 (leading
    // minors alone certify only the definite case).
    for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << d); ++subset) {
        std::vector<std::uint32_t> rows;
        for (std::uint32_t i = 0; i < d; ++i) {
            if (subset & (std::uint32_t{1} << i)) {
                rows.push_back(i);
            }
        }
        std::vector<std::vector<Scalar>> sub;
        sub.reserve(rows.size());
        for (std::uint32_t i : rows) {
            std::vector<Scalar> row;
            row.reserve(rows.size());
            for (std::uint32_t j : rows) {
                row.push_back(cov.entry(i, j));
            }
            sub.push_back(std::move(row));
        }
        if (sgn(rational_determinant(std::move(sub)).rat()) < 0) {
            return false;
        }
    }
    return true;
}

namespace {

constexpr std::uint64_t kBlockSize = 4096;

// One standard normal per call; draws uniforms in (0, 1] so the log is
// finite. Consumes exactly two PRNG outputs per pair of normals.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_.next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng_.next() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// PSD-tolerant floating Cholesky: exact PSD was already verified, so any
// negative pivot is rounding noise and its column is zeroed.
std::vector<std::vector<double>> cholesky_factor(const Covariance& cov) {
    const std::size_t d = cov.dim();
    std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            a[i][j] = cov.entry(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))
                          .to_double();
        }
    }
    std::vector<std::vector<double>> l(d, std::vector<double>(d, 0.0));
    for (std::size_t j = 0; j < d; ++j) {
        double diag = a[j][j];
        for (std::size_t k = 0; k < j; ++k) {
            diag -= l[j][k] * l[j][k];
        }
        const double tol = 1e-12 * std::max(1.0, std::abs(a[j][j]));
        if (diag <= tol) {
            continue;  // semidefinite direction: leave the column zero
        }
        l[j][j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < d; ++i) {
            double v = a[i][j];
            for (std::size_t k = 0; k < j; ++k) {
                v -= l[i][k] * l[j][k];
            }
            l[i][j] = v / l[j][j];
        }
    }
    return l;
}

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

BlockMoments run_block(const std::vector<std::vector<double>>& l,
                       const std::vector<std::uint32_t>& idx, std::uint64_t count,
                       std::uint64_t block_seed) {
    const std::size_t d = l.size();
    GaussianSource gauss(block_seed);
    std::vector<double> z(d), x(d);
    BlockMoments m;
    for (std::uint64_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < d; ++i) {
            z[i] = gauss.next();
        }
        for (std::size_t i = 0; i < d; ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k <= i; ++k) {
                v += l[i][k] * z[k];
            }
            x[i] = v;
        }
        double prod = 1.0;
        for (std::uint32_t j : idx) {
            prod *= x[j];
        }
        m.sum += prod;
        m.sum_sq += prod * prod;
    }
    return m;
}

}  // namespace

MonteCarloResult monte_carlo_estimate(const Covariance& cov,
                                      const std::vector<std::uint32_t>& idx,
                                      std::uint64_t samples, std::uint64_t seed,
                                      bool parallel) {
    for (std::uint32_t i : idx) {
        if (i >= cov.dim()) {
            throw IndexOutOfRange("variable index out of range for the covariance");
        }
    }
    if (samples < 1000) {
        throw std::invalid_argument("Monte Carlo needs at least 1000 samples");
    }
    if (!is_positive_semidefinite(cov)) {
        throw NotPositiveSemidefinite("covariance matrix has a negative principal minor");
    }
    const auto l = cholesky_factor(cov);
    const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockMoments> partial(blocks);
    const auto block_count = [&](std::uint64_t b) {
        const std::uint64_t start = b * kBlockSize;
        return std::min(kBlockSize, samples - start);
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
            partial[static_cast<std::size_t>(b)] =
                run_block(l, idx, block_count(static_cast<std::uint64_t>(b)),
                          derive_seed(seed, static_cast<std::uint64_t>(b)));
        }
    } else
#endif
    {
        (void)parallel;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            partial[b] = run_block(l, idx, block_count(b), derive_seed(seed, b));
        }
    }
    // Fixed-order combination keeps the result independent of thread count.
    double sum = 0.0, sum_sq = 0.0;
    for (const BlockMoments& m : partial) {
        sum += m.sum;
        sum_sq += m.sum_sq;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return MonteCarloResult{mean, std::sqrt(var / n), samples};
}

}  // namespace polar
