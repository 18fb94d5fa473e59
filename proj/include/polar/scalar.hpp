#ifndef POLAR_SCALAR_HPP
#define POLAR_SCALAR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "polar/errors.hpp"

namespace polar {

enum class FieldKind { rational, gfp, float64 };

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Identifies the field a Scalar lives in. GF(p) requires p prime with
// p <= 2^61 - 1 so products fit a widening 128-bit multiply.
class FieldDescriptor {
public:
    FieldDescriptor() : kind_(FieldKind::rational), modulus_(0) {}

    static FieldDescriptor rationals() { return FieldDescriptor(FieldKind::rational, 0); }
    static FieldDescriptor gf(std::uint64_t p);
    static FieldDescriptor float64() { return FieldDescriptor(FieldKind::float64, 0); }

    FieldKind kind() const { return kind_; }
    std::uint64_t modulus() const { return modulus_; }

    // 0 for the rationals and for floats, p for GF(p).
    std::uint64_t characteristic() const {
        return kind_ == FieldKind::gfp ? modulus_ : 0;
    }

    bool exact() const { return kind_ != FieldKind::float64; }

    bool operator==(const FieldDescriptor&) const = default;

    std::string str() const;

private:
    FieldDescriptor(FieldKind k, std::uint64_t m) : kind_(k), modulus_(m) {}

    FieldKind kind_;
    std::uint64_t modulus_;
};

// Immutable field element: an exact rational, a residue mod p, or (Monte
// Carlo path only) a double.
//
// Invariants: rationals are in lowest terms with positive denominator
// (GMP canonical form); GF(p) values satisfy 0 <= value < p.
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}

    static Scalar rational(long num, unsigned long den = 1);
    static Scalar rational(const mpq_class& q);
    static Scalar gf(std::uint64_t value, std::uint64_t p);
    static Scalar real(double x) { return Scalar(x); }

    static Scalar zero(const FieldDescriptor& field);
    static Scalar one(const FieldDescriptor& field);
    static Scalar from_integer(long long n, const FieldDescriptor& field);
    static Scalar from_integer(const mpz_class& n, const FieldDescriptor& field);

    // Parses the serialized forms "p/q" and "p" into the given field
    // (rational, or reduced mod p for GF(p)).
    static Scalar parse(const std::string& text, const FieldDescriptor& field);

    FieldDescriptor field() const;
    std::uint64_t characteristic() const { return field().characteristic(); }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);

    Scalar inverse() const;
    Scalar pow(std::uint64_t e) const;

    // Equality requires identical fields; comparing across fields is a bug.
    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    // "p/q" (or "p" when q = 1) for rationals, the residue for GF(p).
    std::string str() const;

    const mpq_class& rat() const;
    std::uint64_t residue() const;
    double dbl() const;

    // Lossy conversion for the Monte Carlo path; exact fields other than
    // the rationals refuse.
    double to_double() const;

private:
    struct GfpValue {
        std::uint64_t value;
        std::uint64_t p;
        bool operator==(const GfpValue&) const = default;
    };

    explicit Scalar(mpq_class q) : value_(std::move(q)) {}
    explicit Scalar(GfpValue v) : value_(v) {}
    explicit Scalar(double x) : value_(x) {}

    void check_same_field(const Scalar& rhs) const;

    std::variant<mpq_class, GfpValue, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

mpz_class factorial(unsigned n);

// (n!)^-1 in the field. Throws CharacteristicDividesFactorial when the
// characteristic p satisfies 0 < p <= n, FloatNotAllowed for float64.
Scalar invert_factorial(unsigned n, const FieldDescriptor& field);

}  // namespace polar

#endif
