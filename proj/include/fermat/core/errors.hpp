#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fermat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (dt(a) with a <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exact and approximate scalars met in one binary operation.
class ModeError : public Error {
public:
    using Error::Error;
};

/// A caller-side precondition does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Division by a Fermat real whose standard part is zero.
class NotInvertible : public DomainError {
public:
    using DomainError::DomainError;
};

/// Accessor undefined for this value (order of a standard real).
class PartialityError : public Error {
public:
    using Error::Error;
};

/// Evaluation of a primitive outside its natural domain.
class EvalError : public DomainError {
public:
    EvalError(std::string primitive, const std::string& what)
        : DomainError(primitive + ": " + what), primitive_(std::move(primitive)) {}

    const std::string& primitive() const noexcept { return primitive_; }

private:
    std::string primitive_;
};

/// log/sqrt applied to an argument with zero standard part and nonzero infinitesimal part.
class NotSmoothHere : public EvalError {
public:
    using EvalError::EvalError;
};

/// Division by an element the filter oracle declares zero.
class DivisionByZero : public DomainError {
public:
    using DomainError::DomainError;
};

/// Malformed text input; column is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t column)
        : Error(what + " at column " + std::to_string(column)), column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

} // namespace fermat
