#pragma once

#include <stdexcept>
#include <string>

namespace hyperc {

// Base of every error raised by the library. Each subclass maps onto one
// CLI exit code (see cli/commands.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class InputError : public Error {
public:
    using Error::Error;
};

// Evaluation at a pole or a degenerate point (x = 1 in the cross ratio,
// v <= 0 in a blowup).
class SingularityError : public InputError {
public:
    using InputError::InputError;
};

// A root finder could not bracket a sign change. `diagnostic` carries the
// sweep that was scanned.
class BracketError : public Error {
public:
    BracketError(const std::string& what, std::string diagnostic = {})
        : Error(what), diagnostic_(std::move(diagnostic)) {}
    const std::string& diagnostic() const noexcept { return diagnostic_; }

private:
    std::string diagnostic_;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class VerificationError : public Error {
public:
    using Error::Error;
};

// Exact arithmetic exceeded a configured size budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

class DivisibilityError : public Error {
public:
    using Error::Error;
};

// The elimination chain collapsed to the zero polynomial.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

class CertificationError : public Error {
public:
    using Error::Error;
};

// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperc
