#ifndef POLAR_BENCH_HPP
#define POLAR_BENCH_HPP

#include <cstdint>
#include <vector>

#include "polar/polarize.hpp"
#include "polar/symtensor.hpp"

namespace polar {

// Head-to-head of the naive subset-sum enumeration (every subset sum built
// from scratch) against the Gray-code enumeration (one vector update per
// subset) on identical instances. Instances are sparse integer tensors so
// the subset-construction cost is what the timing sees.
struct BenchConfig {
    std::uint32_t n_min = 8;
    std::uint32_t n_max = 14;
    std::uint32_t dim = 4;
    std::uint32_t repetitions = 3;
    std::uint64_t seed = 0;
    std::uint32_t nonzero_coeffs = 4;  // tensor slots given a nonzero value
    std::uint32_t coord_range = 3;     // vector coordinates in [-range, range]
};

struct BenchRow {
    std::uint32_t n = 0;
    bool results_equal = false;
    Scalar value;                       // the common engine output
    std::uint64_t naive_vector_ops = 0;  // n * 2^(n-1)
    std::uint64_t gray_vector_ops = 0;   // 2^n - 1
    std::uint64_t naive_ns = 0;          // median over repetitions
    std::uint64_t gray_ns = 0;
};

// Deterministic instance for one row, shared by both engines.
struct BenchInstance {
    SymMultiMap tensor;
    std::vector<Vector> xs;
};
BenchInstance make_bench_instance(const BenchConfig& config, std::uint32_t n);

std::vector<BenchRow> run_bench(const BenchConfig& config);

}  // namespace polar

#endif
