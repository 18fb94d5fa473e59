#ifndef POLAR_ERRORS_HPP
#define POLAR_ERRORS_HPP

#include <stdexcept>

namespace polar {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands belong to different fields.
struct FieldMismatch : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// The requested computation is impossible for the inputs' algebraic
// properties. CLI maps these to exit code 3.
struct CapabilityError : Error {
    using Error::Error;
};

// n! (or a multinomial coefficient) is not invertible: 0 < char(K) <= n.
struct CharacteristicDividesFactorial : CapabilityError {
    using CapabilityError::CapabilityError;
};

// The sign-flip identity needs 2 to be invertible.
struct CharacteristicTwo : CapabilityError {
    using CapabilityError::CapabilityError;
};

// Float scalars are legal only on the Monte Carlo path.
struct FloatNotAllowed : CapabilityError {
    using CapabilityError::CapabilityError;
};

struct NotPositiveSemidefinite : CapabilityError {
    using CapabilityError::CapabilityError;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ArityMismatch : Error {
    using Error::Error;
};

struct NotHomogeneous : Error {
    using Error::Error;
};

// Pair partitions exist only for even order.
struct OddOrder : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace polar

#endif
