#include "polar/scalar.hpp"

#include <array>
#include <ostream>
#include <sstream>

namespace polar {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    base %= p;
    while (exp != 0) {
        if (exp & 1) {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return acc;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // a, b < p <= 2^61 - 1, so the sum cannot wrap.
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

// Extended Euclid; a != 0, p prime.
std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::uint64_t r = p, new_r = a;
    while (new_r != 0) {
        const std::uint64_t q = r / new_r;
        const std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        const std::uint64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p))
                 : static_cast<std::uint64_t>(t);
}

constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 61) - 1;

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) {
            return n == q;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven witness set for every n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

FieldDescriptor FieldDescriptor::gf(std::uint64_t p) {
    if (p > kMaxModulus) {
        throw std::invalid_argument("GF(p) modulus exceeds 2^61 - 1");
    }
    if (!is_prime_u64(p)) {
        throw std::invalid_argument("GF(p) modulus must be prime");
    }
    return FieldDescriptor(FieldKind::gfp, p);
}

std::string FieldDescriptor::str() const {
    switch (kind_) {
        case FieldKind::rational:
            return "rational";
        case FieldKind::gfp:
            return "gf(" + std::to_string(modulus_) + ")";
        case FieldKind::float64:
            return "float64";
    }
    return "?";
}

Scalar Scalar::rational(long num, unsigned long den) {
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::rational(const mpq_class& q) {
    if (q.get_den() == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    mpq_class c = q;
    c.canonicalize();
    return Scalar(std::move(c));
}

Scalar Scalar::gf(std::uint64_t value, std::uint64_t p) {
    const FieldDescriptor f = FieldDescriptor::gf(p);  // validates p
    return Scalar(GfpValue{value % f.modulus(), f.modulus()});
}

Scalar Scalar::zero(const FieldDescriptor& field) {
    return from_integer(0, field);
}

Scalar Scalar::one(const FieldDescriptor& field) {
    return from_integer(1, field);
}

Scalar Scalar::from_integer(long long n, const FieldDescriptor& field) {
    return from_integer(mpz_class(static_cast<long>(n)), field);
}

Scalar Scalar::from_integer(const mpz_class& n, const FieldDescriptor& field) {
    switch (field.kind()) {
        case FieldKind::rational:
            return Scalar(mpq_class(n));
        case FieldKind::gfp: {
            mpz_class r = n % mpz_class(field.modulus());
            if (r < 0) {
                r += mpz_class(field.modulus());
            }
            return Scalar(GfpValue{r.get_ui(), field.modulus()});
        }
        case FieldKind::float64:
            return Scalar(n.get_d());
    }
    throw std::logic_error("unreachable field kind");
}

namespace {

// Strictly "-?digits" optionally followed by "/digits"; no spaces, no signs
// on the denominator. GMP's own parser is too forgiving for serialized data.
bool well_formed_rational_literal(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') {
        ++i;
    }
    const std::size_t num_start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        ++i;
    }
    if (i == num_start) {
        return false;
    }
    if (i == s.size()) {
        return true;
    }
    if (s[i] != '/') {
        return false;
    }
    const std::size_t den_start = ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        ++i;
    }
    return i > den_start && i == s.size();
}

}  // namespace

Scalar Scalar::parse(const std::string& text, const FieldDescriptor& field) {
    if (!well_formed_rational_literal(text)) {
        throw ParseError("invalid scalar literal: \"" + text + "\"");
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
        throw ParseError("invalid scalar literal: \"" + text + "\"");
    }
    if (q.get_den() == 0) {
        throw ParseError("zero denominator in scalar literal: \"" + text + "\"");
    }
    q.canonicalize();
    switch (field.kind()) {
        case FieldKind::rational:
            return Scalar(std::move(q));
        case FieldKind::gfp: {
            const Scalar num = from_integer(mpz_class(q.get_num()), field);
            const Scalar den = from_integer(mpz_class(q.get_den()), field);
            return num * den.inverse();
        }
        case FieldKind::float64:
            return Scalar(q.get_d());
    }
    throw std::logic_error("unreachable field kind");
}

FieldDescriptor Scalar::field() const {
    if (std::holds_alternative<mpq_class>(value_)) {
        return FieldDescriptor::rationals();
    }
    if (std::holds_alternative<GfpValue>(value_)) {
        return FieldDescriptor::gf(std::get<GfpValue>(value_).p);
    }
    return FieldDescriptor::float64();
}

bool Scalar::is_zero() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        return sgn(*q) == 0;
    }
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        return g->value == 0;
    }
    return std::get<double>(value_) == 0.0;
}

bool Scalar::is_one() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        return *q == 1;
    }
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        return g->value == 1 % g->p;
    }
    return std::get<double>(value_) == 1.0;
}

void Scalar::check_same_field(const Scalar& rhs) const {
    if (value_.index() != rhs.value_.index()) {
        throw FieldMismatch("scalar operands from different fields: " + field().str() +
                            " vs " + rhs.field().str());
    }
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        if (g->p != std::get<GfpValue>(rhs.value_).p) {
            throw FieldMismatch("GF(p) operands with different moduli");
        }
    }
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    Scalar out(*this);
    out += rhs;
    return out;
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    Scalar out(*this);
    out -= rhs;
    return out;
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    Scalar out(*this);
    out *= rhs;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    check_same_field(rhs);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
        *q += std::get<mpq_class>(rhs.value_);
    } else if (auto* g = std::get_if<GfpValue>(&value_)) {
        g->value = addmod(g->value, std::get<GfpValue>(rhs.value_).value, g->p);
    } else {
        std::get<double>(value_) += std::get<double>(rhs.value_);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    check_same_field(rhs);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
        *q -= std::get<mpq_class>(rhs.value_);
    } else if (auto* g = std::get_if<GfpValue>(&value_)) {
        g->value = submod(g->value, std::get<GfpValue>(rhs.value_).value, g->p);
    } else {
        std::get<double>(value_) -= std::get<double>(rhs.value_);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    check_same_field(rhs);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
        *q *= std::get<mpq_class>(rhs.value_);
    } else if (auto* g = std::get_if<GfpValue>(&value_)) {
        g->value = mulmod(g->value, std::get<GfpValue>(rhs.value_).value, g->p);
    } else {
        std::get<double>(value_) *= std::get<double>(rhs.value_);
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        return Scalar(mpq_class(-*q));
    }
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        return Scalar(GfpValue{g->value == 0 ? 0 : g->p - g->value, g->p});
    }
    return Scalar(-std::get<double>(value_));
}

Scalar Scalar::inverse() const {
    if (is_zero()) {
        throw DivisionByZero("inverse of zero");
    }
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        mpq_class inv(q->get_den(), q->get_num());
        inv.canonicalize();
        return Scalar(std::move(inv));
    }
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        return Scalar(GfpValue{invmod(g->value, g->p), g->p});
    }
    return Scalar(1.0 / std::get<double>(value_));
}

Scalar Scalar::pow(std::uint64_t e) const {
    Scalar acc = Scalar::one(field());
    Scalar base = *this;
    while (e != 0) {
        if (e & 1) {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& rhs) const {
    check_same_field(rhs);
    return value_ == rhs.value_;
}

std::string Scalar::str() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        return q->get_str();
    }
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        return std::to_string(g->value);
    }
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(value_);
    return os.str();
}

const mpq_class& Scalar::rat() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        return *q;
    }
    throw FieldMismatch("scalar is not rational");
}

std::uint64_t Scalar::residue() const {
    if (const auto* g = std::get_if<GfpValue>(&value_)) {
        return g->value;
    }
    throw FieldMismatch("scalar is not a GF(p) value");
}

double Scalar::dbl() const {
    if (const auto* x = std::get_if<double>(&value_)) {
        return *x;
    }
    throw FieldMismatch("scalar is not a float");
}

double Scalar::to_double() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) {
        return q->get_d();
    }
    if (const auto* x = std::get_if<double>(&value_)) {
        return *x;
    }
    throw FieldMismatch("no meaningful double value for GF(p) scalars");
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
}

mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Scalar invert_factorial(unsigned n, const FieldDescriptor& field) {
    if (n < 1) {
        throw std::invalid_argument("invert_factorial needs n >= 1");
    }
    if (!field.exact()) {
        throw FloatNotAllowed("invert_factorial over float64");
    }
    const std::uint64_t p = field.characteristic();
    if (p != 0 && p <= n) {
        throw CharacteristicDividesFactorial(
            "n! is not invertible: characteristic " + std::to_string(p) +
            " <= n = " + std::to_string(n));
    }
    return Scalar::from_integer(factorial(n), field).inverse();
}

}  // namespace polar
