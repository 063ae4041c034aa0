#pragma once

#include <stdexcept>
#include <string>

namespace eapkit {

/// Bad or missing scenario/config input. CLI maps this to exit code 1.
/// Messages always name the offending key or field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Base for numerical failures. CLI maps these to exit code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two bodies coincide; the force law is undefined. Carries the offending pair.
struct SingularConfiguration : NumericalError {
    SingularConfiguration(std::size_t i, std::size_t j)
        : NumericalError("singular configuration: bodies " + std::to_string(i) + " and " +
                         std::to_string(j) + " are coincident"),
          body_a(i), body_b(j) {}
    std::size_t body_a;
    std::size_t body_b;
};

/// Rigid-link projection failed to converge (link error > 1e-6 relative).
struct ConstraintDivergence : NumericalError {
    explicit ConstraintDivergence(const std::string& msg) : NumericalError(msg) {}
};

/// Internal energy is not small against rest-mass energy; the 1/c^2
/// expansion is invalid and the caller must not trust its output.
struct WeakFieldViolation : NumericalError {
    explicit WeakFieldViolation(const std::string& msg) : NumericalError(msg) {}
};

/// Invalid physical value (non-positive mass, negative uncertainty, ...).
/// From the CLI these surface while building a scenario, so they map to exit 2
/// when raised by calculators and exit 1 when raised during config parsing.
struct DomainError : NumericalError {
    explicit DomainError(const std::string& msg) : NumericalError(msg) {}
};

/// Material label not in the bundled density table.
struct UnknownMaterial : NumericalError {
    explicit UnknownMaterial(const std::string& msg) : NumericalError(msg) {}
};

/// Filesystem failure while writing artifacts. CLI maps this to exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace eapkit
