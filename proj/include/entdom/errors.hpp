#pragma once

#include <stdexcept>
#include <string>

namespace entdom {

// Invalid or inconsistent input (bad parameters, unknown config keys, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Requested a steady-state quantity for a dynamically unstable configuration.
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure (pole search, quadrature) failed to reach its target
// tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Kernel matrix is singular at the requested frequency (on a pole).
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix fails the requirements of a quantum covariance matrix.
class InvalidCovarianceError : public std::runtime_error {
public:
    explicit InvalidCovarianceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entdom
