#include "polar/polarize.hpp"

#include <bit>
#include <stdexcept>

#include "polar/polynomial.hpp"

namespace polar {

namespace {

void check_arity(const DiagonalFn& diag, const std::vector<Vector>& xs) {
    if (xs.size() != diag.order()) {
        throw ArityMismatch(std::to_string(xs.size()) + " arguments for a diagonal of order " +
                            std::to_string(diag.order()));
    }
    if (xs.size() > 63) {
        throw std::invalid_argument("subset masks support at most 63 arguments");
    }
    for (const Vector& x : xs) {
        if (x.dim() != diag.dim()) {
            throw DimensionMismatch("argument dimension " + std::to_string(x.dim()) +
                                    " does not match diagonal dimension " +
                                    std::to_string(diag.dim()));
        }
        if (x.field() != diag.field()) {
            throw FieldMismatch("argument from a different field");
        }
    }
}

// G_k = (difference by xs[k-1]) applied to G_{k-1}, G_0 = diag; evaluates
// G_k at the point `at`. 2^k diagonal evaluations at the leaves.
Scalar difference_eval(const DiagonalFn& diag, const std::vector<Vector>& xs, std::size_t k,
                       const Vector& at, EngineStats* stats) {
    if (k == 0) {
        if (stats != nullptr) {
            ++stats->diagonal_evals;
        }
        return diag(at);
    }
    Vector shifted = at;
    shifted += xs[k - 1];
    if (stats != nullptr) {
        ++stats->vector_ops;
    }
    return difference_eval(diag, xs, k - 1, shifted, stats) -
           difference_eval(diag, xs, k - 1, at, stats);
}

}  // namespace

Vector subset_sum(const std::vector<Vector>& xs, SubsetMask mask) {
    if (xs.empty()) {
        throw std::invalid_argument("subset_sum needs at least one vector");
    }
    if (xs.size() < 64 && (mask >> xs.size()) != 0) {
        throw IndexOutOfRange("mask selects positions beyond the argument list");
    }
    Vector acc = Vector::zero(xs[0].field(), xs[0].dim());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (mask & (SubsetMask{1} << i)) {
            acc += xs[i];
        }
    }
    return acc;
}

std::vector<SignedMask> shift_expand(std::uint32_t n) {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("shift_expand needs 1 <= n <= 63");
    }
    std::vector<SignedMask> out;
    out.reserve(std::size_t{1} << n);
    for (SubsetMask mask = 0; mask < (SubsetMask{1} << n); ++mask) {
        const int sign = ((n - std::popcount(mask)) % 2 == 0) ? +1 : -1;
        out.push_back(SignedMask{mask, sign});
    }
    return out;
}

Scalar polarize_operator(const DiagonalFn& diag, const std::vector<Vector>& xs,
                         EngineStats* stats) {
    check_arity(diag, xs);
    const Vector origin = Vector::zero(diag.field(), diag.dim());
    return difference_eval(diag, xs, xs.size(), origin, stats);
}

Scalar polarize_subset_sum(const DiagonalFn& diag, const std::vector<Vector>& xs,
                           EngineStats* stats) {
    check_arity(diag, xs);
    const std::uint32_t n = diag.order();
    Scalar total = Scalar::zero(diag.field());
    for (SubsetMask mask = 1; mask < (SubsetMask{1} << n); ++mask) {
        // Each subset sum is rebuilt from scratch: |J| vector additions.
        Vector s = Vector::zero(diag.field(), diag.dim());
        for (std::uint32_t i = 0; i < n; ++i) {
            if (mask & (SubsetMask{1} << i)) {
                s += xs[i];
                if (stats != nullptr) {
                    ++stats->vector_ops;
                }
            }
        }
        if (stats != nullptr) {
            ++stats->diagonal_evals;
        }
        const Scalar term = diag(s);
        if ((n - std::popcount(mask)) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

Scalar polarize_subset_sum_gray(const DiagonalFn& diag, const std::vector<Vector>& xs,
                                EngineStats* stats) {
    check_arity(diag, xs);
    const std::uint32_t n = diag.order();
    Scalar total = Scalar::zero(diag.field());
    Vector s = Vector::zero(diag.field(), diag.dim());
    // Binary-reflected code: step i visits mask i ^ (i >> 1); exactly the
    // bit countr_zero(i) flips, so one vector update suffices.
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        const SubsetMask mask = i ^ (i >> 1);
        const unsigned flipped = static_cast<unsigned>(std::countr_zero(i));
        if (mask & (SubsetMask{1} << flipped)) {
            s += xs[flipped];
        } else {
            s -= xs[flipped];
        }
        if (stats != nullptr) {
            ++stats->vector_ops;
            ++stats->diagonal_evals;
        }
        const Scalar term = diag(s);
        if ((n - std::popcount(mask)) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

Scalar polarize_offset(const DiagonalFn& diag, const std::vector<Vector>& xs,
                       const Vector& x0, EngineStats* stats) {
    check_arity(diag, xs);
    if (x0.dim() != diag.dim()) {
        throw DimensionMismatch("base point dimension does not match the diagonal");
    }
    if (x0.field() != diag.field()) {
        throw FieldMismatch("base point from a different field");
    }
    const std::uint32_t n = diag.order();
    Scalar total = Scalar::zero(diag.field());
    for (SubsetMask mask = 0; mask < (SubsetMask{1} << n); ++mask) {
        Vector s = x0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (mask & (SubsetMask{1} << i)) {
                s += xs[i];
                if (stats != nullptr) {
                    ++stats->vector_ops;
                }
            }
        }
        if (stats != nullptr) {
            ++stats->diagonal_evals;
        }
        const Scalar term = diag(s);
        if ((n - std::popcount(mask)) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

Scalar polarize_signed(const DiagonalFn& diag, const std::vector<Vector>& xs,
                       EngineStats* stats) {
    check_arity(diag, xs);
    if (diag.field().characteristic() == 2) {
        throw CharacteristicTwo("the sign-flip identity excludes characteristic 2");
    }
    const std::uint32_t n = diag.order();
    Scalar total = Scalar::zero(diag.field());
    // eps bit set means x_i enters with a minus sign.
    for (SubsetMask eps = 0; eps < (SubsetMask{1} << n); ++eps) {
        Vector s = Vector::zero(diag.field(), diag.dim());
        for (std::uint32_t i = 0; i < n; ++i) {
            if (eps & (SubsetMask{1} << i)) {
                s -= xs[i];
            } else {
                s += xs[i];
            }
            if (stats != nullptr) {
                ++stats->vector_ops;
            }
        }
        if (stats != nullptr) {
            ++stats->diagonal_evals;
        }
        const Scalar term = diag(s);
        if (std::popcount(eps) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

Scalar coefficient_extraction(const SymMultiMap& u, const std::vector<Vector>& xs) {
    if (xs.size() != u.order()) {
        throw ArityMismatch(std::to_string(xs.size()) + " arguments for a map of order " +
                            std::to_string(u.order()));
    }
    for (const Vector& x : xs) {
        if (x.dim() != u.dim()) {
            throw DimensionMismatch("argument dimension does not match the map");
        }
        if (x.field() != u.field()) {
            throw FieldMismatch("argument from a different field");
        }
    }
    const Polynomial p = u.to_polynomial();
    // Each coordinate variable xj becomes the j-th coordinate of
    // t1*x1 + ... + tn*xn, a linear polynomial in t1..tn.
    std::map<std::string, Polynomial> subs;
    for (const std::string& var : p.vars()) {
        const std::uint32_t j = [&] {
            std::uint32_t k = 0;
            for (std::size_t c = 1; c < var.size(); ++c) {
                k = k * 10 + static_cast<std::uint32_t>(var[c] - '0');
            }
            return k;
        }();
        Polynomial coord(u.field());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            coord = coord + Polynomial::variable("t" + std::to_string(i + 1), u.field())
                                .scaled(xs[i][j]);
        }
        subs.emplace(var, std::move(coord));
    }
    const Polynomial expanded = p.substitute(subs);
    Polynomial::Monomial target;
    for (std::size_t i = 1; i <= xs.size(); ++i) {
        target["t" + std::to_string(i)] = 1;
    }
    return expanded.coefficient(target);
}

bool constant_check(const DiagonalFn& diag, const std::vector<Vector>& xs,
                    const std::vector<Vector>& probes) {
    if (xs.size() > 63) {
        throw std::invalid_argument("subset masks support at most 63 arguments");
    }
    for (const Vector& x : xs) {
        if (x.dim() != diag.dim()) {
            throw DimensionMismatch("argument dimension does not match the diagonal");
        }
        if (x.field() != diag.field()) {
            throw FieldMismatch("argument from a different field");
        }
    }
    const Vector origin = Vector::zero(diag.field(), diag.dim());
    const Scalar at_origin = difference_eval(diag, xs, xs.size(), origin, nullptr);
    for (const Vector& probe : probes) {
        if (probe.dim() != diag.dim()) {
            throw DimensionMismatch("probe dimension does not match the diagonal");
        }
        if (probe.field() != diag.field()) {
            throw FieldMismatch("probe from a different field");
        }
        if (difference_eval(diag, xs, xs.size(), probe, nullptr) != at_origin) {
            return false;
        }
    }
    return true;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::operator_calculus: return "operator";
        case Method::subset: return "subset";
        case Method::gray: return "gray";
        case Method::offset: return "offset";
        case Method::signed_sum: return "signed";
        case Method::derivative: return "derivative";
        case Method::recover: return "recover";
    }
    throw std::logic_error("unreachable method");
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::operator_calculus, Method::subset, Method::gray, Method::offset,
                     Method::signed_sum, Method::derivative, Method::recover}) {
        if (method_name(m) == name) {
            return m;
        }
    }
    throw ParseError("unknown method \"" + name +
                     "\" (expected operator|subset|gray|offset|signed|derivative|recover)");
}

std::vector<Method> default_methods(const FieldDescriptor& field) {
    std::vector<Method> out{Method::operator_calculus, Method::subset, Method::gray,
                            Method::offset, Method::derivative};
    if (field.characteristic() != 2) {
        out.push_back(Method::signed_sum);
    }
    return out;
}

Scalar recover(const DiagonalFn& diag, const std::vector<Vector>& xs, Method method,
               const Vector* x0) {
    const Scalar inv_fact = invert_factorial(diag.order(), diag.field());
    switch (method) {
        case Method::operator_calculus:
            return polarize_operator(diag, xs) * inv_fact;
        case Method::subset:
            return polarize_subset_sum(diag, xs) * inv_fact;
        case Method::gray:
            return polarize_subset_sum_gray(diag, xs) * inv_fact;
        case Method::offset: {
            const Vector base = x0 != nullptr ? *x0 : Vector::zero(diag.field(), diag.dim());
            return polarize_offset(diag, xs, base) * inv_fact;
        }
        case Method::signed_sum: {
            const Scalar raw = polarize_signed(diag, xs);
            const Scalar two_n =
                Scalar::from_integer(2, diag.field()).pow(diag.order());
            return raw * inv_fact * two_n.inverse();
        }
        case Method::derivative:
        case Method::recover:
            break;
    }
    throw std::invalid_argument("recover supports the operator, subset, gray, offset, and "
                                "signed engines");
}

}  // namespace polar
