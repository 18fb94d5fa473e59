#ifndef POLAR_POLYNOMIAL_HPP
#define POLAR_POLYNOMIAL_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "polar/errors.hpp"
#include "polar/scalar.hpp"

namespace polar {

// Exponent vector aligned with a polynomial's variable list.
using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order: total degree first, then lexicographic on the
// exponent vector. Only compares keys of equal length (one polynomial's terms).
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        std::uint64_t da = 0, db = 0;
        for (std::uint32_t e : a) da += e;
        for (std::uint32_t e : b) db += e;
        if (da != db) {
            return da < db;
        }
        return a < b;
    }
};

// Exact multivariate polynomial in named commuting indeterminates.
//
// Canonical form: the variable list holds exactly the names that occur with a
// positive exponent somewhere, sorted ascending; no zero coefficients are
// stored. Operations on polynomials with different variable lists take the
// union of the two universes first.
class Polynomial {
public:
    using Monomial = std::map<std::string, std::uint32_t>;
    using TermMap = std::map<Exponents, Scalar, GrlexLess>;

    // The zero polynomial over the given field.
    explicit Polynomial(FieldDescriptor field);

    static Polynomial constant(const Scalar& c);
    static Polynomial variable(const std::string& name, const FieldDescriptor& field);

    const FieldDescriptor& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }

    // Total degree; 0 for the zero polynomial.
    std::uint32_t degree() const;
    // Every term has the same total degree (vacuously true for 0).
    bool is_homogeneous() const;

    // Accumulates coeff onto the given monomial ({} is the constant term;
    // entries with exponent 0 are ignored).
    void add_term(const Monomial& monomial, const Scalar& coeff);

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator-() const;
    Polynomial scaled(const Scalar& c) const;
    Polynomial pow(std::uint32_t e) const;

    // Stored coefficient of the monomial, or 0. Mentioning an unknown
    // variable with a positive exponent simply yields 0.
    Scalar coefficient(const Monomial& monomial) const;

    // Formal partial derivative with respect to one variable.
    Polynomial derivative(const std::string& var) const;

    // Evaluation; every variable of the polynomial must be assigned.
    Scalar eval(const std::map<std::string, Scalar>& point) const;

    // Replaces each mapped variable by a polynomial; unmapped variables stay
    // themselves. Powers of each replacement are computed once and reused.
    Polynomial substitute(const std::map<std::string, Polynomial>& subs) const;

    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    // Canonical text, descending graded-lex: "a1^2 + 2*a1*a2 + a2^2".
    std::string str() const;

private:
    // Re-expresses the terms over a superset variable list (sorted).
    Polynomial remapped(const std::vector<std::string>& new_vars) const;
    // Drops zero coefficients and unused variables.
    void prune();
    void accumulate(const Exponents& key, const Scalar& coeff);

    FieldDescriptor field_;
    std::vector<std::string> vars_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// For univariate P: true unless P' is a constant c with P(1) - P(0) != c.
// (The calculus-free derivative lemma behind the difference identities.)
bool lemma_check(const Polynomial& p);

// Symbolically verifies n! a1...an = sum_{k=0}^{n} (-1)^{n-k}
// sum_{i1<...<ik} (a_{i1}+...+a_{ik})^n over the rationals.
bool nelson_identity_check(std::uint32_t n, std::uint32_t max_n = 8);

}  // namespace polar

#endif
