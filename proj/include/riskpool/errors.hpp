#pragma once

#include <stdexcept>
#include <string>

namespace riskpool {

/// Invalid or inconsistent user input: bad config fields, mismatched lattice
/// steps, parameters outside their admissible range.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A distribution cannot satisfy the tail-mass rule within the allowed
/// number of lattice points.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure inside the fixed-point machinery: a root bracket could
/// not be established, a fairness equation is infeasible, or an iterate left
/// the positive cone.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside a function's mathematical domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riskpool
