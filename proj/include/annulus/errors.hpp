#pragma once

#include <stdexcept>
#include <string>

namespace annulus {

// Base of everything the library throws on a contract violation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two sampled functions (or a function and a geometry) disagree on grid size.
class GeometryMismatch : public Error {
public:
    using Error::Error;
};

// A Fourier index at or beyond the Nyquist limit of a sampled circle function.
class AliasingError : public Error {
public:
    using Error::Error;
};

// An index window too small for the requested interior margin.
class WindowError : public Error {
public:
    WindowError(const std::string& what, int required_size)
        : Error(what), required_size_(required_size) {}
    int required_size() const noexcept { return required_size_; }

private:
    int required_size_;
};

// A linear system that is singular beyond the conditioning tolerance.
class SingularSystem : public Error {
public:
    SingularSystem(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// Operation precondition not met (zero profile, missing top degree, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Invalid lab configuration; the message carries the offending field path.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace annulus
