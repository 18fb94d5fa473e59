#ifndef POLAR_POLARIZE_HPP
#define POLAR_POLARIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polar/symtensor.hpp"
#include "polar/vector.hpp"

namespace polar {

// Bit i (0-based) set <=> argument x_{i+1} belongs to the subset J.
using SubsetMask = std::uint64_t;

struct SignedMask {
    SubsetMask mask;
    int sign;  // +1 or -1
    bool operator==(const SignedMask&) const = default;
};

// Work counters shared by all engines. "vector_ops" counts single-vector
// additions/subtractions; the naive subset engine rebuilds every subset sum
// from scratch (sum over k of k*C(n,k) = n*2^(n-1) ops) while the Gray-code
// engine performs exactly one update per visited subset (2^n - 1 ops).
struct EngineStats {
    std::uint64_t diagonal_evals = 0;
    std::uint64_t vector_ops = 0;
};

// S_J = sum of the member vectors; the empty mask gives the zero vector.
Vector subset_sum(const std::vector<Vector>& xs, SubsetMask mask);

// Full expansion of the product of (shift-by-x_i minus identity) operators:
// every mask J, ascending, with sign (-1)^(n-|J|).
std::vector<SignedMask> shift_expand(std::uint32_t n);

// Nested difference operators evaluated at the origin, recursively:
// returns n! * u(x1,...,xn). Valid over any field.
Scalar polarize_operator(const DiagonalFn& diag, const std::vector<Vector>& xs,
                         EngineStats* stats = nullptr);

// Alternating sum of diag over the 2^n - 1 nonempty subset sums (the empty
// term vanishes); returns n! * u. Valid over any field.
Scalar polarize_subset_sum(const DiagonalFn& diag, const std::vector<Vector>& xs,
                           EngineStats* stats = nullptr);

// Same value as polarize_subset_sum, but subsets are visited in
// binary-reflected Gray-code order (bit 1 = x1) so each subset sum is one
// vector update away from the previous one.
Scalar polarize_subset_sum_gray(const DiagonalFn& diag, const std::vector<Vector>& xs,
                                EngineStats* stats = nullptr);

// Subset sum shifted by an arbitrary base point x0, all 2^n masks including
// the empty one; the result is independent of x0 because the fully
// differenced diagonal is a constant function.
Scalar polarize_offset(const DiagonalFn& diag, const std::vector<Vector>& xs,
                       const Vector& x0, EngineStats* stats = nullptr);

// Sign-flip form: alternating sum of diag(±x1 ± x2 ... ± xn) over all 2^n
// sign patterns; returns 2^n * n! * u. Requires characteristic != 2.
Scalar polarize_signed(const DiagonalFn& diag, const std::vector<Vector>& xs,
                       EngineStats* stats = nullptr);

// Expands diag(t1*x1 + ... + tn*xn) as a polynomial in t1..tn and extracts
// the coefficient of t1*t2*...*tn; equals n! * u over any field.
Scalar coefficient_extraction(const SymMultiMap& u, const std::vector<Vector>& xs);

// True iff applying the difference operators for all of xs to diag yields a
// function taking the same value at 0 and at every probe.
bool constant_check(const DiagonalFn& diag, const std::vector<Vector>& xs,
                    const std::vector<Vector>& probes);

enum class Method {
    operator_calculus,  // nested difference operators
    subset,             // nonempty subset sums
    gray,               // Gray-code subset enumeration
    offset,             // subset sums based at x0
    signed_sum,         // +-1 sign patterns
    derivative,         // coefficient extraction in t1..tn
    recover,            // divided form u = (engine output) / n!
};

std::string method_name(Method m);
Method parse_method(const std::string& name);
// The methods meaningful for a given field (signed_sum drops out in
// characteristic 2; recover needs n! invertible and is opt-in).
std::vector<Method> default_methods(const FieldDescriptor& field);

// u(x1,...,xn) itself: engine output divided by n! (and by 2^n for the
// sign-flip engine). Requires characteristic 0 or > n. x0 (used by the
// offset method) defaults to the origin.
Scalar recover(const DiagonalFn& diag, const std::vector<Vector>& xs, Method method,
               const Vector* x0 = nullptr);

}  // namespace polar

#endif
