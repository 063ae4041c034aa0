#pragma once

#include <cmath>
#include <string>

#include "eapkit/errors.hpp"

namespace eapkit {

/// Scalar with an absolute 1-standard uncertainty. All combinators below
/// assume INDEPENDENT Gaussian errors; correlated quantities must be reduced
/// algebraically first (see squared()).
struct Measured {
    double value = 0.0;
    double sigma = 0.0; // absolute, same unit as value

    Measured() = default;
    Measured(double v, double sigma_abs) : value(v), sigma(sigma_abs) {
        if (sigma < 0.0 || !std::isfinite(sigma))
            throw DomainError("Measured sigma_abs must be >= 0, got " + std::to_string(sigma_abs));
    }
    /// Exact value, zero uncertainty.
    static Measured exact(double v) { return Measured(v, 0.0); }
};

/// Product of independent quantities with the exact Gaussian variance
///   Var(xy) = Vx*Vy + Vx*y² + Vy*x².
/// The cross term Vx*Vy is what keeps the propagated uncertainty alive when
/// one central value sits at zero (a null measurement times a geometry
/// factor), where plain first-order propagation would drop the geometry
/// uncertainty entirely.
inline Measured mul(const Measured& a, const Measured& b) {
    const double var = a.sigma * a.sigma * b.sigma * b.sigma +
                       a.sigma * a.sigma * b.value * b.value +
                       b.sigma * b.sigma * a.value * a.value;
    return Measured(a.value * b.value, std::sqrt(var));
}

/// First-order reciprocal; requires a nonzero central value.
inline Measured reciprocal(const Measured& a) {
    if (a.value == 0.0) throw DomainError("reciprocal of Measured with zero central value");
    return Measured(1.0 / a.value, a.sigma / (a.value * a.value));
}

inline Measured divide(const Measured& a, const Measured& b) { return mul(a, reciprocal(b)); }

/// x² of a SINGLE measured quantity: fully correlated with itself, so the
/// first-order sigma is 2|x|*sigma_x, not the independent-product value.
inline Measured squared(const Measured& a) {
    return Measured(a.value * a.value, 2.0 * std::abs(a.value) * a.sigma);
}

inline Measured scale(const Measured& a, double k) {
    return Measured(a.value * k, a.sigma * std::abs(k));
}

inline Measured add(const Measured& a, const Measured& b) {
    return Measured(a.value + b.value, std::hypot(a.sigma, b.sigma));
}

inline Measured sub(const Measured& a, const Measured& b) {
    return Measured(a.value - b.value, std::hypot(a.sigma, b.sigma));
}

} // namespace eapkit
