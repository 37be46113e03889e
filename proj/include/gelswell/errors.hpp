#pragma once

/**
 * @file errors.hpp
 * @brief Exception types shared by all gelswell modules.
 *
 * Every failure mode that callers are expected to branch on has its own
 * type; the CLI maps the type name onto the `kind` field of its error JSON.
 */

#include <stdexcept>
#include <string>

namespace gelswell {

/// Argument outside the domain of a constitutive or geometric function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid ParameterSet, SimConfig or CLI configuration document.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// u^2 + G'(1/psi) >= 0 at a state that must be hyperbolic.
class NotHyperbolic : public std::runtime_error {
public:
    NotHyperbolic(const std::string& what, double margin)
        : std::runtime_error(what), margin_(margin) {}
    /// The violated margin -(u^2 + G'(1/psi)); non-positive.
    double margin() const noexcept { return margin_; }

private:
    double margin_;
};

class NonFinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoRoot : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double errorEstimate)
        : std::runtime_error(what), errorEstimate_(errorEstimate) {}
    double errorEstimate() const noexcept { return errorEstimate_; }

private:
    double errorEstimate_;
};

/// Initial data violating a C^1 compatibility line (1 or 2).
class IncompatibleData : public std::runtime_error {
public:
    IncompatibleData(const std::string& what, int line)
        : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class BoundBlowup : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InterpolationOutOfRange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonMonotone : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gelswell
