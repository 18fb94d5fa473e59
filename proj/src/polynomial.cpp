#include "polar/polynomial.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace polar {

Polynomial::Polynomial(FieldDescriptor field) : field_(field) {
    if (!field_.exact()) {
        throw FloatNotAllowed("polynomials require an exact field");
    }
}

Polynomial Polynomial::constant(const Scalar& c) {
    Polynomial p(c.field());
    if (!c.is_zero()) {
        p.terms_.emplace(Exponents{}, c);
    }
    return p;
}

Polynomial Polynomial::variable(const std::string& name, const FieldDescriptor& field) {
    if (name.empty()) {
        throw std::invalid_argument("variable name must be nonempty");
    }
    Polynomial p(field);
    p.vars_.push_back(name);
    p.terms_.emplace(Exponents{1}, Scalar::one(field));
    return p;
}

std::uint32_t Polynomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [key, coeff] : terms_) {
        std::uint32_t t = 0;
        for (std::uint32_t e : key) t += e;
        d = std::max(d, t);
    }
    return d;
}

bool Polynomial::is_homogeneous() const {
    bool first = true;
    std::uint64_t deg = 0;
    for (const auto& [key, coeff] : terms_) {
        std::uint64_t t = 0;
        for (std::uint32_t e : key) t += e;
        if (first) {
            deg = t;
            first = false;
        } else if (t != deg) {
            return false;
        }
    }
    return true;
}

void Polynomial::accumulate(const Exponents& key, const Scalar& coeff) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (!coeff.is_zero()) {
            terms_.emplace(key, coeff);
        }
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

void Polynomial::add_term(const Monomial& monomial, const Scalar& coeff) {
    if (coeff.field() != field_) {
        throw FieldMismatch("coefficient from a different field");
    }
    std::vector<std::string> needed;
    for (const auto& [name, exp] : monomial) {
        if (exp > 0 && !std::binary_search(vars_.begin(), vars_.end(), name)) {
            needed.push_back(name);
        }
    }
    if (!needed.empty()) {
        std::vector<std::string> merged = vars_;
        merged.insert(merged.end(), needed.begin(), needed.end());
        std::sort(merged.begin(), merged.end());
        *this = remapped(merged);
    }
    Exponents key(vars_.size(), 0);
    for (const auto& [name, exp] : monomial) {
        if (exp == 0) {
            continue;
        }
        const auto pos = std::lower_bound(vars_.begin(), vars_.end(), name) - vars_.begin();
        key[static_cast<std::size_t>(pos)] = exp;
    }
    accumulate(key, coeff);
    prune();
}

Polynomial Polynomial::remapped(const std::vector<std::string>& new_vars) const {
    Polynomial out(field_);
    out.vars_ = new_vars;
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto it = std::lower_bound(new_vars.begin(), new_vars.end(), vars_[i]);
        where[i] = static_cast<std::size_t>(it - new_vars.begin());
    }
    for (const auto& [key, coeff] : terms_) {
        Exponents nk(new_vars.size(), 0);
        for (std::size_t i = 0; i < key.size(); ++i) {
            nk[where[i]] = key[i];
        }
        out.terms_.emplace(std::move(nk), coeff);
    }
    return out;
}

void Polynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [key, coeff] : terms_) {
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] > 0) {
                used[i] = true;
            }
        }
    }
    if (std::find(used.begin(), used.end(), false) == used.end()) {
        return;
    }
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (used[i]) {
            kept.push_back(vars_[i]);
        }
    }
    TermMap squeezed;
    for (const auto& [key, coeff] : terms_) {
        Exponents nk;
        nk.reserve(kept.size());
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (used[i]) {
                nk.push_back(key[i]);
            }
        }
        squeezed.emplace(std::move(nk), coeff);
    }
    vars_ = std::move(kept);
    terms_ = std::move(squeezed);
}

namespace {

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    if (field_ != rhs.field_) {
        throw FieldMismatch("polynomials over different fields");
    }
    const auto merged = union_vars(vars_, rhs.vars_);
    Polynomial out = remapped(merged);
    const Polynomial r = rhs.remapped(merged);
    for (const auto& [key, coeff] : r.terms_) {
        out.accumulate(key, coeff);
    }
    out.prune();
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    return *this + (-rhs);
}

Polynomial Polynomial::operator-() const {
    Polynomial out(*this);
    for (auto& [key, coeff] : out.terms_) {
        coeff = -coeff;
    }
    return out;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
    if (c.field() != field_) {
        throw FieldMismatch("scale factor from a different field");
    }
    Polynomial out(*this);
    for (auto& [key, coeff] : out.terms_) {
        coeff *= c;
    }
    out.prune();
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (field_ != rhs.field_) {
        throw FieldMismatch("polynomials over different fields");
    }
    const auto merged = union_vars(vars_, rhs.vars_);
    const Polynomial a = remapped(merged);
    const Polynomial b = rhs.remapped(merged);
    Polynomial out(field_);
    out.vars_ = merged;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            Exponents key(merged.size());
            for (std::size_t i = 0; i < merged.size(); ++i) {
                key[i] = ka[i] + kb[i];
            }
            out.accumulate(key, ca * cb);
        }
    }
    out.prune();
    return out;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
    Polynomial acc = Polynomial::constant(Scalar::one(field_));
    for (std::uint32_t i = 0; i < e; ++i) {
        acc = acc * *this;
    }
    return acc;
}

Scalar Polynomial::coefficient(const Monomial& monomial) const {
    Exponents key(vars_.size(), 0);
    for (const auto& [name, exp] : monomial) {
        if (exp == 0) {
            continue;
        }
        const auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
        if (it == vars_.end() || *it != name) {
            return Scalar::zero(field_);
        }
        key[static_cast<std::size_t>(it - vars_.begin())] = exp;
    }
    const auto it = terms_.find(key);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    const auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) {
        return Polynomial(field_);
    }
    const std::size_t pos = static_cast<std::size_t>(it - vars_.begin());
    Polynomial out(field_);
    out.vars_ = vars_;
    for (const auto& [key, coeff] : terms_) {
        if (key[pos] == 0) {
            continue;
        }
        Exponents nk = key;
        nk[pos] -= 1;
        out.accumulate(nk, coeff * Scalar::from_integer(key[pos], field_));
    }
    out.prune();
    return out;
}

Scalar Polynomial::eval(const std::map<std::string, Scalar>& point) const {
    // Power tables: powers[i][e] = point(vars_[i])^e, built once per variable.
    std::vector<std::vector<Scalar>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto it = point.find(vars_[i]);
        if (it == point.end()) {
            throw std::invalid_argument("no value assigned to variable " + vars_[i]);
        }
        if (it->second.field() != field_) {
            throw FieldMismatch("evaluation point from a different field");
        }
        std::uint32_t max_exp = 0;
        for (const auto& [key, coeff] : terms_) {
            max_exp = std::max(max_exp, key[i]);
        }
        powers[i].reserve(max_exp + 1);
        powers[i].push_back(Scalar::one(field_));
        for (std::uint32_t e = 1; e <= max_exp; ++e) {
            powers[i].push_back(powers[i].back() * it->second);
        }
    }
    Scalar total = Scalar::zero(field_);
    for (const auto& [key, coeff] : terms_) {
        Scalar term = coeff;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] > 0) {
                term *= powers[i][key[i]];
            }
        }
        total += term;
    }
    return total;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& subs) const {
    // Replacement polynomial per variable (the variable itself if unmapped),
    // with powers cached across terms.
    std::vector<const Polynomial*> repl(vars_.size(), nullptr);
    std::vector<Polynomial> own;
    own.reserve(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const auto it = subs.find(vars_[i]);
        if (it != subs.end()) {
            if (it->second.field() != field_) {
                throw FieldMismatch("substitution from a different field");
            }
            repl[i] = &it->second;
        } else {
            own.push_back(Polynomial::variable(vars_[i], field_));
            repl[i] = &own.back();
        }
    }
    std::vector<std::vector<Polynomial>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        powers[i].push_back(Polynomial::constant(Scalar::one(field_)));
    }
    const auto power_of = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
        while (powers[i].size() <= e) {
            powers[i].push_back(powers[i].back() * *repl[i]);
        }
        return powers[i][e];
    };
    Polynomial out(field_);
    for (const auto& [key, coeff] : terms_) {
        Polynomial term = Polynomial::constant(coeff);
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] > 0) {
                term = term * power_of(i, key[i]);
            }
        }
        out = out + term;
    }
    return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    if (field_ != rhs.field_) {
        throw FieldMismatch("comparing polynomials over different fields");
    }
    return vars_ == rhs.vars_ && terms_ == rhs.terms_;
}

std::string Polynomial::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    // Descending graded-lex: leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [key, coeff] = *it;
        std::string c = coeff.str();
        bool negative = false;
        if (!c.empty() && c[0] == '-') {
            negative = true;
            c = c.substr(1);
        }
        if (first) {
            if (negative) {
                os << "-";
            }
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] == 0) {
                continue;
            }
            factors.push_back(key[i] == 1 ? vars_[i]
                                          : vars_[i] + "^" + std::to_string(key[i]));
        }
        if (factors.empty()) {
            os << c;
            continue;
        }
        if (c != "1") {
            os << c << "*";
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0) {
                os << "*";
            }
            os << factors[i];
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    return os << p.str();
}

bool lemma_check(const Polynomial& p) {
    if (p.vars().size() > 1) {
        throw std::invalid_argument("lemma_check needs a univariate polynomial");
    }
    if (p.vars().empty()) {
        return true;  // constant P: P' = 0 and P(1) - P(0) = 0
    }
    const std::string& t = p.vars()[0];
    const Polynomial d = p.derivative(t);
    if (!d.is_constant()) {
        return true;
    }
    const Scalar c = d.coefficient({});
    const Scalar at1 = p.eval({{t, Scalar::one(p.field())}});
    const Scalar at0 = p.eval({{t, Scalar::zero(p.field())}});
    return at1 - at0 == c;
}

bool nelson_identity_check(std::uint32_t n, std::uint32_t max_n) {
    if (n < 1 || n > max_n) {
        throw std::invalid_argument("nelson_identity_check: n out of range");
    }
    const FieldDescriptor field = FieldDescriptor::rationals();
    std::vector<Polynomial> a;
    a.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i) {
        a.push_back(Polynomial::variable("a" + std::to_string(i), field));
    }
    Polynomial total(field);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Polynomial sum(field);
        std::uint32_t k = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                sum = sum + a[i];
                ++k;
            }
        }
        Polynomial term = sum.pow(n);
        if ((n - k) % 2 == 1) {
            term = -term;
        }
        total = total + term;
    }
    Polynomial expected = Polynomial::constant(Scalar::from_integer(factorial(n), field));
    for (const Polynomial& ai : a) {
        expected = expected * ai;
    }
    return total == expected;
}

}  // namespace polar
