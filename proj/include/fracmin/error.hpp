#pragma once

#include <stdexcept>
#include <string>

namespace fracmin {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Grid too small for the requested object.
class SizeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A phase gap reached pi in magnitude; the discrete degree is undefined.
class AdmissibilityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& where, const std::string& what) {
    throw DomainError(where + ": " + what);
}

} // namespace detail
} // namespace fracmin
