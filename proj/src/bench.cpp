#include "polar/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "polar/rng.hpp"

namespace polar {

BenchInstance make_bench_instance(const BenchConfig& config, std::uint32_t n) {
    const FieldDescriptor field = FieldDescriptor::rationals();
    SymMultiMap tensor(n, config.dim, field);
    SplitMix64 rng(derive_seed(config.seed, n));
    const std::size_t slots = tensor.index_basis().size();
    // A handful of distinct slots with small positive integer coefficients:
    // the diagonal stays cheap to evaluate, so enumeration cost dominates.
    const std::uint32_t wanted =
        static_cast<std::uint32_t>(std::min<std::size_t>(config.nonzero_coeffs, slots));
    std::vector<std::size_t> chosen;
    while (chosen.size() < wanted) {
        const std::size_t s = static_cast<std::size_t>(rng.below(slots));
        if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) {
            chosen.push_back(s);
        }
    }
    for (std::size_t s : chosen) {
        const long c = 1 + static_cast<long>(rng.below(3));
        tensor.set(tensor.index_basis()[s], Scalar::rational(c));
    }
    std::vector<Vector> xs;
    xs.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<Scalar> coords;
        coords.reserve(config.dim);
        for (std::uint32_t j = 0; j < config.dim; ++j) {
            coords.push_back(Scalar::rational(
                rng.range(-static_cast<std::int64_t>(config.coord_range),
                          static_cast<std::int64_t>(config.coord_range))));
        }
        xs.emplace_back(field, std::move(coords));
    }
    return BenchInstance{std::move(tensor), std::move(xs)};
}

namespace {

std::uint64_t median_ns(std::vector<std::uint64_t> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

template <typename Engine>
std::uint64_t time_engine(const Engine& engine, std::uint32_t repetitions) {
    std::vector<std::uint64_t> ns;
    ns.reserve(repetitions);
    for (std::uint32_t r = 0; r < repetitions; ++r) {
        const auto started = std::chrono::steady_clock::now();
        engine();
        const auto elapsed = std::chrono::steady_clock::now() - started;
        ns.push_back(static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()));
    }
    return median_ns(std::move(ns));
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    if (config.n_min < 1 || config.n_max < config.n_min || config.n_max > 20) {
        throw std::invalid_argument("bench supports 1 <= n_min <= n_max <= 20");
    }
    if (config.dim < 1 || config.repetitions < 1) {
        throw std::invalid_argument("bench needs dim >= 1 and repetitions >= 1");
    }
    std::vector<BenchRow> rows;
    for (std::uint32_t n = config.n_min; n <= config.n_max; ++n) {
        const BenchInstance inst = make_bench_instance(config, n);
        const DiagonalFn diag = inst.tensor.diagonal();

        BenchRow row;
        row.n = n;
        // Correctness first, untimed, with the operation counters on.
        EngineStats naive_stats, gray_stats;
        const Scalar naive_value = polarize_subset_sum(diag, inst.xs, &naive_stats);
        const Scalar gray_value = polarize_subset_sum_gray(diag, inst.xs, &gray_stats);
        row.results_equal = naive_value == gray_value;
        row.value = naive_value;
        row.naive_vector_ops = naive_stats.vector_ops;
        row.gray_vector_ops = gray_stats.vector_ops;
        // Then the timed repetitions, counters off.
        row.naive_ns = time_engine([&] { polarize_subset_sum(diag, inst.xs); },
                                   config.repetitions);
        row.gray_ns = time_engine([&] { polarize_subset_sum_gray(diag, inst.xs); },
                                  config.repetitions);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace polar
