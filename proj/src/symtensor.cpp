#include "polar/symtensor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "polar/rng.hpp"

namespace polar {

MultiIndex::MultiIndex(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) {
        throw std::invalid_argument("multi-index must have order >= 1");
    }
    if (!std::is_sorted(indices_.begin(), indices_.end())) {
        throw std::invalid_argument("multi-index entries must be non-decreasing");
    }
}

MultiIndex MultiIndex::sorted(std::vector<std::uint32_t> indices) {
    std::sort(indices.begin(), indices.end());
    return MultiIndex(std::move(indices));
}

mpz_class MultiIndex::multiplicity() const {
    mpz_class m = factorial(order());
    std::uint32_t run = 1;
    for (std::size_t i = 1; i <= indices_.size(); ++i) {
        if (i < indices_.size() && indices_[i] == indices_[i - 1]) {
            ++run;
            continue;
        }
        if (run > 1) {
            m /= factorial(run);
        }
        run = 1;
    }
    return m;
}

std::vector<std::uint32_t> MultiIndex::counts(std::uint32_t dim) const {
    std::vector<std::uint32_t> c(dim, 0);
    for (std::uint32_t i : indices_) {
        if (i >= dim) {
            throw IndexOutOfRange("multi-index entry " + std::to_string(i) +
                                  " out of range for dimension " + std::to_string(dim));
        }
        ++c[i];
    }
    return c;
}

std::string MultiIndex::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i > 0) {
            os << ",";
        }
        os << indices_[i];
    }
    os << ")";
    return os.str();
}

std::vector<MultiIndex> enumerate_multi_indices(std::uint32_t order, std::uint32_t dim) {
    if (order < 1 || dim < 1) {
        throw std::invalid_argument("order and dim must be >= 1");
    }
    std::vector<MultiIndex> out;
    std::vector<std::uint32_t> cur(order, 0);
    while (true) {
        out.push_back(MultiIndex(cur));
        // Advance to the next non-decreasing tuple, odometer style.
        std::size_t pos = order;
        while (pos > 0 && cur[pos - 1] == dim - 1) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        const std::uint32_t v = cur[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < order; ++i) {
            cur[i] = v;
        }
    }
    return out;
}

DiagonalFn::DiagonalFn(std::uint32_t order, std::uint32_t dim, FieldDescriptor field,
                       std::function<Scalar(const Vector&)> fn)
    : order_(order), dim_(dim), field_(field), fn_(std::move(fn)) {
    if (order_ < 1 || dim_ < 1) {
        throw std::invalid_argument("order and dim must be >= 1");
    }
    if (!field_.exact()) {
        throw FloatNotAllowed("diagonal functions require an exact field");
    }
}

Scalar DiagonalFn::operator()(const Vector& x) const {
    if (x.dim() != dim_) {
        throw DimensionMismatch("argument of dimension " + std::to_string(x.dim()) +
                                " for a diagonal over dimension " + std::to_string(dim_));
    }
    if (x.field() != field_) {
        throw FieldMismatch("argument from a different field");
    }
    return fn_(x);
}

SymMultiMap::SymMultiMap(std::uint32_t order, std::uint32_t dim, FieldDescriptor field)
    : order_(order), dim_(dim), field_(field) {
    if (order_ < 1 || dim_ < 1) {
        throw std::invalid_argument("order and dim must be >= 1");
    }
    if (!field_.exact()) {
        throw FloatNotAllowed("symmetric maps require an exact field");
    }
    basis_ = enumerate_multi_indices(order_, dim_);
    coeffs_.assign(basis_.size(), Scalar::zero(field_));
}

std::size_t SymMultiMap::slot(const MultiIndex& m) const {
    if (m.order() != order_) {
        throw ArityMismatch("multi-index of order " + std::to_string(m.order()) +
                            " for a map of order " + std::to_string(order_));
    }
    if (m.indices().back() >= dim_) {
        throw IndexOutOfRange("multi-index entry out of range for dimension " +
                              std::to_string(dim_));
    }
    const auto it = std::lower_bound(basis_.begin(), basis_.end(), m);
    return static_cast<std::size_t>(it - basis_.begin());
}

const Scalar& SymMultiMap::get(const MultiIndex& m) const {
    return coeffs_[slot(m)];
}

void SymMultiMap::set(const MultiIndex& m, const Scalar& value) {
    if (value.field() != field_) {
        throw FieldMismatch("coefficient from a different field");
    }
    coeffs_[slot(m)] = value;
}

Scalar SymMultiMap::eval_direct(const std::vector<Vector>& args) const {
    if (args.size() != order_) {
        throw ArityMismatch(std::to_string(args.size()) + " arguments for a map of order " +
                            std::to_string(order_));
    }
    for (const Vector& x : args) {
        if (x.dim() != dim_) {
            throw DimensionMismatch("argument dimension " + std::to_string(x.dim()) +
                                    " does not match map dimension " + std::to_string(dim_));
        }
        if (x.field() != field_) {
            throw FieldMismatch("argument from a different field");
        }
    }
    Scalar total = Scalar::zero(field_);
    for (std::size_t s = 0; s < basis_.size(); ++s) {
        if (coeffs_[s].is_zero()) {
            continue;
        }
        // Sum the products over every distinct permutation of this index.
        std::vector<std::uint32_t> perm = basis_[s].indices();
        Scalar orbit = Scalar::zero(field_);
        do {
            Scalar prod = Scalar::one(field_);
            for (std::size_t k = 0; k < perm.size(); ++k) {
                prod *= args[k][perm[k]];
            }
            orbit += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += coeffs_[s] * orbit;
    }
    return total;
}

DiagonalFn SymMultiMap::diagonal() const {
    // Monomial form of the diagonal: one (counts, multiplicity * coeff) pair
    // per nonzero slot, evaluated with per-coordinate power tables.
    struct Term {
        std::vector<std::uint32_t> counts;
        Scalar weight;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    std::vector<std::uint32_t> max_count(dim_, 0);
    for (std::size_t s = 0; s < basis_.size(); ++s) {
        if (coeffs_[s].is_zero()) {
            continue;
        }
        Term t{basis_[s].counts(dim_),
               coeffs_[s] * Scalar::from_integer(basis_[s].multiplicity(), field_)};
        for (std::uint32_t j = 0; j < dim_; ++j) {
            max_count[j] = std::max(max_count[j], t.counts[j]);
        }
        terms->push_back(std::move(t));
    }
    const FieldDescriptor field = field_;
    const std::uint32_t dim = dim_;
    auto fn = [terms, max_count, field, dim](const Vector& x) -> Scalar {
        std::vector<std::vector<Scalar>> powers(dim);
        for (std::uint32_t j = 0; j < dim; ++j) {
            powers[j].reserve(max_count[j] + 1);
            powers[j].push_back(Scalar::one(field));
            for (std::uint32_t e = 1; e <= max_count[j]; ++e) {
                powers[j].push_back(powers[j].back() * x[j]);
            }
        }
        Scalar total = Scalar::zero(field);
        for (const Term& t : *terms) {
            Scalar prod = t.weight;
            for (std::uint32_t j = 0; j < dim; ++j) {
                if (t.counts[j] > 0) {
                    prod *= powers[j][t.counts[j]];
                }
            }
            total += prod;
        }
        return total;
    };
    return DiagonalFn(order_, dim_, field_, std::move(fn));
}

Polynomial SymMultiMap::to_polynomial() const {
    Polynomial p(field_);
    for (std::size_t s = 0; s < basis_.size(); ++s) {
        if (coeffs_[s].is_zero()) {
            continue;
        }
        const auto counts = basis_[s].counts(dim_);
        Polynomial::Monomial mono;
        for (std::uint32_t j = 0; j < dim_; ++j) {
            if (counts[j] > 0) {
                mono["x" + std::to_string(j)] = counts[j];
            }
        }
        p.add_term(mono, coeffs_[s] * Scalar::from_integer(basis_[s].multiplicity(), field_));
    }
    return p;
}

namespace {

std::uint32_t parse_coordinate_var(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x') {
        throw std::invalid_argument("expected coordinate variable x<k>, got " + name);
    }
    std::uint32_t k = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') {
            throw std::invalid_argument("expected coordinate variable x<k>, got " + name);
        }
        k = k * 10 + static_cast<std::uint32_t>(name[i] - '0');
    }
    return k;
}

}  // namespace

SymMultiMap SymMultiMap::from_polynomial(const Polynomial& p) {
    if (p.is_zero()) {
        throw std::invalid_argument("cannot infer order and dimension from the zero polynomial");
    }
    std::uint32_t dim = 0;
    for (const std::string& v : p.vars()) {
        dim = std::max(dim, parse_coordinate_var(v) + 1);
    }
    return from_polynomial(p, p.degree(), dim);
}

SymMultiMap SymMultiMap::from_polynomial(const Polynomial& p, std::uint32_t order,
                                         std::uint32_t dim) {
    if (!p.is_homogeneous()) {
        throw NotHomogeneous("polynomial is not homogeneous");
    }
    if (!p.is_zero() && p.degree() != order) {
        throw NotHomogeneous("polynomial degree " + std::to_string(p.degree()) +
                             " does not match order " + std::to_string(order));
    }
    std::vector<std::uint32_t> coord(p.vars().size());
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        coord[i] = parse_coordinate_var(p.vars()[i]);
        if (coord[i] >= dim) {
            throw DimensionMismatch("variable " + p.vars()[i] +
                                    " out of range for dimension " + std::to_string(dim));
        }
    }
    SymMultiMap u(order, dim, p.field());
    for (const auto& [key, c] : p.terms()) {
        std::vector<std::uint32_t> idx;
        idx.reserve(order);
        for (std::size_t i = 0; i < key.size(); ++i) {
            for (std::uint32_t r = 0; r < key[i]; ++r) {
                idx.push_back(coord[i]);
            }
        }
        const MultiIndex m = MultiIndex::sorted(std::move(idx));
        const Scalar mult = Scalar::from_integer(m.multiplicity(), p.field());
        if (mult.is_zero()) {
            throw CharacteristicDividesFactorial(
                "permutation multiplicity of " + m.str() +
                " vanishes in characteristic " + std::to_string(p.field().characteristic()));
        }
        u.set(m, c * mult.inverse());
    }
    return u;
}

bool SymMultiMap::operator==(const SymMultiMap& rhs) const {
    if (order_ != rhs.order_ || dim_ != rhs.dim_ || field_ != rhs.field_) {
        return false;
    }
    return coeffs_ == rhs.coeffs_;
}

namespace {

Scalar draw_coefficient(SplitMix64& rng, const FieldDescriptor& field,
                        const RandomTensorOptions& options) {
    if (field.kind() == FieldKind::gfp) {
        return Scalar::gf(rng.below(field.modulus()), field.modulus());
    }
    const std::int64_t span = 2 * static_cast<std::int64_t>(options.max_numerator) + 1;
    const std::int64_t num = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(span))) -
                             static_cast<std::int64_t>(options.max_numerator);
    const std::uint64_t den = 1 + rng.below(options.max_denominator);
    return Scalar::rational(static_cast<long>(num), static_cast<unsigned long>(den));
}

}  // namespace

SymMultiMap random_symmetric(std::uint32_t order, std::uint32_t dim,
                             const FieldDescriptor& field, std::uint64_t seed,
                             const RandomTensorOptions& options) {
    SymMultiMap u(order, dim, field);
    SplitMix64 rng(seed);
    for (const MultiIndex& m : u.index_basis()) {
        const bool fill = rng.uniform01() < options.density;
        const Scalar c = draw_coefficient(rng, field, options);
        if (fill) {
            u.set(m, c);
        }
    }
    return u;
}

Vector random_vector(std::uint32_t dim, const FieldDescriptor& field, std::uint64_t seed,
                     const RandomTensorOptions& options) {
    SplitMix64 rng(seed);
    std::vector<Scalar> coords;
    coords.reserve(dim);
    for (std::uint32_t j = 0; j < dim; ++j) {
        coords.push_back(draw_coefficient(rng, field, options));
    }
    return Vector(field, std::move(coords));
}

}  // namespace polar
