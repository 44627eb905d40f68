#pragma once

#include <stdexcept>
#include <string>

namespace rvea {

/// An argument lies outside the domain an operation is defined on
/// (out-of-range value, shape mismatch, violated type invariant).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A request exceeds a hard size limit of the implementation.
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// An expected hitting time is infinite because absorption is unreachable.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A least-squares design matrix does not have full column rank.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rvea
