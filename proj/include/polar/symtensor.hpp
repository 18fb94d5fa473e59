#ifndef POLAR_SYMTENSOR_HPP
#define POLAR_SYMTENSOR_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "polar/errors.hpp"
#include "polar/polynomial.hpp"
#include "polar/scalar.hpp"
#include "polar/vector.hpp"

namespace polar {

// Sorted index tuple (i1 <= i2 <= ... <= in) naming one coefficient of a
// symmetric map; all permutations of a basis tuple share this key.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<std::uint32_t> indices);

    // Sorts a copy first, for callers holding an arbitrary tuple.
    static MultiIndex sorted(std::vector<std::uint32_t> indices);

    std::uint32_t order() const { return static_cast<std::uint32_t>(indices_.size()); }
    const std::vector<std::uint32_t>& indices() const { return indices_; }

    // Number of distinct permutations: n! / (m_0! m_1! ...), where m_j
    // counts occurrences of j.
    mpz_class multiplicity() const;

    // Occurrence count of each value in [0, dim).
    std::vector<std::uint32_t> counts(std::uint32_t dim) const;

    bool operator<(const MultiIndex& rhs) const { return indices_ < rhs.indices_; }
    bool operator==(const MultiIndex& rhs) const = default;

    std::string str() const;

private:
    std::vector<std::uint32_t> indices_;
};

// All sorted multi-indices of the given order with entries < dim, in
// ascending lexicographic order. Size C(order + dim - 1, order).
std::vector<MultiIndex> enumerate_multi_indices(std::uint32_t order, std::uint32_t dim);

// The diagonal x -> u(x,...,x) of a symmetric map, carried around as an
// evaluation contract so polarization engines see only a black box.
class DiagonalFn {
public:
    DiagonalFn(std::uint32_t order, std::uint32_t dim, FieldDescriptor field,
               std::function<Scalar(const Vector&)> fn);

    std::uint32_t order() const { return order_; }
    std::uint32_t dim() const { return dim_; }
    const FieldDescriptor& field() const { return field_; }

    Scalar operator()(const Vector& x) const;

private:
    std::uint32_t order_;
    std::uint32_t dim_;
    FieldDescriptor field_;
    std::function<Scalar(const Vector&)> fn_;
};

// Symmetric n-linear map E^n -> K over a d-dimensional E, stored densely
// over sorted multi-indices (one slot per orbit of basis tuples).
// Treat as immutable once populated; reads are thread-safe.
class SymMultiMap {
public:
    SymMultiMap(std::uint32_t order, std::uint32_t dim, FieldDescriptor field);

    std::uint32_t order() const { return order_; }
    std::uint32_t dim() const { return dim_; }
    const FieldDescriptor& field() const { return field_; }

    const std::vector<MultiIndex>& index_basis() const { return basis_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    const Scalar& get(const MultiIndex& m) const;
    void set(const MultiIndex& m, const Scalar& value);

    // Definitional evaluation: sum over every index tuple, realized as a sum
    // over sorted multi-indices times their distinct permutations.
    Scalar eval_direct(const std::vector<Vector>& args) const;

    // x -> u(x,...,x), evaluated through the multiplicity-weighted monomial
    // form (cost C(n+d-1, n) per call, not d^n).
    DiagonalFn diagonal() const;

    // The diagonal as a homogeneous degree-n polynomial in x0..x{d-1}.
    Polynomial to_polynomial() const;

    // Inverse of to_polynomial: the unique symmetric map with the given
    // diagonal. Shape is inferred from the polynomial (degree, highest
    // variable index) unless given explicitly.
    static SymMultiMap from_polynomial(const Polynomial& p);
    static SymMultiMap from_polynomial(const Polynomial& p, std::uint32_t order,
                                       std::uint32_t dim);

    bool operator==(const SymMultiMap& rhs) const;
    bool operator!=(const SymMultiMap& rhs) const { return !(*this == rhs); }

private:
    std::size_t slot(const MultiIndex& m) const;

    std::uint32_t order_;
    std::uint32_t dim_;
    FieldDescriptor field_;
    std::vector<MultiIndex> basis_;
    std::vector<Scalar> coeffs_;
};

// Bounds for pseudo-random instance generation.
struct RandomTensorOptions {
    std::uint32_t max_numerator = 9;   // coefficients drawn from [-N, N]
    std::uint32_t max_denominator = 9; // denominators from [1, D]
    double density = 1.0;              // probability a slot is filled
};

// Deterministic pseudo-random tensor: same (order, dim, field, seed,
// options) always yields the same coefficients. Draw protocol per slot, in
// ascending index order: a gate draw, then for rationals a numerator in
// [-N, N] and a denominator in [1, D]; for GF(p) a single residue draw.
SymMultiMap random_symmetric(std::uint32_t order, std::uint32_t dim,
                             const FieldDescriptor& field, std::uint64_t seed,
                             const RandomTensorOptions& options = {});

// Companion vector generator; per coordinate: numerator and denominator
// draws for rationals, one residue draw for GF(p).
Vector random_vector(std::uint32_t dim, const FieldDescriptor& field, std::uint64_t seed,
                     const RandomTensorOptions& options = {});

}  // namespace polar

#endif
