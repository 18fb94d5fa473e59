#ifndef POLAR_VECTOR_HPP
#define POLAR_VECTOR_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polar/errors.hpp"
#include "polar/scalar.hpp"

namespace polar {

// Fixed-dimension vector over an exact field. Floats are refused at
// construction so everything downstream of a Vector stays exact.
class Vector {
public:
    Vector(FieldDescriptor field, std::size_t dim)
        : field_(check_exact(field)), coords_(dim, Scalar::zero(field)) {}

    Vector(FieldDescriptor field, std::vector<Scalar> coords)
        : field_(check_exact(field)), coords_(std::move(coords)) {
        for (const Scalar& c : coords_) {
            if (c.field() != field_) {
                throw FieldMismatch("vector coordinate from a different field");
            }
        }
    }

    static Vector zero(const FieldDescriptor& field, std::size_t dim) {
        return Vector(field, dim);
    }

    const FieldDescriptor& field() const { return field_; }
    std::size_t dim() const { return coords_.size(); }

    const Scalar& operator[](std::size_t i) const {
        if (i >= coords_.size()) {
            throw IndexOutOfRange("vector index " + std::to_string(i) +
                                  " out of range for dimension " + std::to_string(coords_.size()));
        }
        return coords_[i];
    }

    void set(std::size_t i, const Scalar& v) {
        if (i >= coords_.size()) {
            throw IndexOutOfRange("vector index " + std::to_string(i) +
                                  " out of range for dimension " + std::to_string(coords_.size()));
        }
        if (v.field() != field_) {
            throw FieldMismatch("vector coordinate from a different field");
        }
        coords_[i] = v;
    }

    Vector& operator+=(const Vector& rhs) {
        check_compatible(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] += rhs.coords_[i];
        }
        return *this;
    }

    Vector& operator-=(const Vector& rhs) {
        check_compatible(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] -= rhs.coords_[i];
        }
        return *this;
    }

    Vector operator+(const Vector& rhs) const {
        Vector out(*this);
        out += rhs;
        return out;
    }

    Vector operator-(const Vector& rhs) const {
        Vector out(*this);
        out -= rhs;
        return out;
    }

    Vector scaled(const Scalar& c) const {
        Vector out(*this);
        for (Scalar& x : out.coords_) {
            x *= c;
        }
        return out;
    }

    bool operator==(const Vector& rhs) const {
        check_compatible(rhs);
        return coords_ == rhs.coords_;
    }
    bool operator!=(const Vector& rhs) const { return !(*this == rhs); }

    const std::vector<Scalar>& coords() const { return coords_; }

private:
    static const FieldDescriptor& check_exact(const FieldDescriptor& field) {
        if (!field.exact()) {
            throw FloatNotAllowed("vectors require an exact field");
        }
        return field;
    }

    void check_compatible(const Vector& rhs) const {
        if (field_ != rhs.field_) {
            throw FieldMismatch("vectors from different fields");
        }
        if (coords_.size() != rhs.coords_.size()) {
            throw DimensionMismatch("vectors of dimensions " + std::to_string(coords_.size()) +
                                    " and " + std::to_string(rhs.coords_.size()));
        }
    }

    FieldDescriptor field_;
    std::vector<Scalar> coords_;
};

}  // namespace polar

#endif
