#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "eapkit/constants.hpp"
#include "eapkit/errors.hpp"
#include "eapkit/vec3.hpp"

namespace eapkit {

/// Point mass whose active gravitational charge (how strongly it sources
/// gravity) may differ from its passive charge (how strongly it responds).
///// The passive mass doubles as the inertial mass throughout: the ordinary
/// equivalence principle between inertia and passive gravity is assumed
/// exact, only the active/passive symmetry is allowed to break.
struct Body {
    Body(double passive_mass_kg, double active_mass_kg, Vec3 pos = {}, Vec3 vel = {},
         std::string material_label = "")
        : passive_mass(passive_mass_kg),
          active_mass(active_mass_kg),
          position(pos),
          velocity(vel),
          material(std::move(material_label)) {
        if (!(passive_mass > 0.0) || !std::isfinite(passive_mass))
            throw DomainError("body passive_mass must be positive and finite, got " +
                              std::to_string(passive_mass_kg));
        if (!(active_mass > 0.0) || !std::isfinite(active_mass))
            throw DomainError("body active_mass must be positive and finite, got " +
                              std::to_string(active_mass_kg));
    }

    double passive_mass; // kg, also the inertial mass
    double active_mass;  // kg
    Vec3 position;       // m
    Vec3 velocity;       // m/s
    std::string material;
};

/// The two dimensionless asymmetry parameters of a body pair.
///
///   s     = m1a/m1p - m2a/m2p   (antisymmetric under 1<->2)
///   sigma = 1 - (m1a + m2a)/(m1p + m2p)   (symmetric)
///
/// They are independent: s=0 with sigma!=0 and s!=0 with sigma=0 both occur.
struct ViolationParams {
    double s = 0.0;
    double sigma = 0.0;
};

/// Gravitational forces on each member of a pair, stored as "force ON the
/// named body". When s(1,2)=0 the two are exactly opposite (third law).
struct ForcePair {
    Vec3 on_body1; // N
    Vec3 on_body2; // N
};

inline ViolationParams violation_params(const Body& b1, const Body& b2) {
    return {b1.active_mass / b1.passive_mass - b2.active_mass / b2.passive_mass,
            1.0 - (b1.active_mass + b2.active_mass) / (b1.passive_mass + b2.passive_mass)};
}

/// Material-dependent interaction strength G~ = G * m_a/m_p: the constant an
/// experimenter would infer from the free fall of this body toward a
/// reference source. Scatter in measured G across materials bounds sigma.
inline double effective_G(const Body& b, double G = constants::G_NEWTON) {
    return G * (b.active_mass / b.passive_mass);
}

namespace detail {

/// Separation vector x1-x2 with its squared norm; throws on coincidence.
/// Index arguments only label the offending pair in the error.
inline std::pair<Vec3, double> separation_checked(const Body& b1, const Body& b2,
                                                  std::size_t i = 0, std::size_t j = 1) {
    const Vec3 x = b1.position - b2.position;
    const double r2 = x.norm_squared();
    if (r2 == 0.0) throw SingularConfiguration(i, j);
    return {x, r2};
}

} // namespace detail

/// Force on body 1 sourced by body 2 and vice versa. Attractive convention:
/// each force points from the body it acts on toward the other one. The
/// magnitude pairs the passive mass of the acted-on body with the ACTIVE
/// mass of the sourcing body, which is the entire asymmetry:
///
///   F_on_1 = -G * m1p * m2a * (x1-x2)/|x1-x2|^3
///   F_on_2 = +G * m2p * m1a * (x1-x2)/|x1-x2|^3
inline ForcePair pairwise_forces(const Body& b1, const Body& b2,
                                 double G = constants::G_NEWTON) {
    const auto [x, r2] = detail::separation_checked(b1, b2);
    const double r = std::sqrt(r2);
    const Vec3 k = x / (r2 * r); // (x1-x2)/r^3
    const double p12 = b1.passive_mass * b2.active_mass;
    const double p21 = b2.passive_mass * b1.active_mass;
    return {k * -(G * p12), k * (G * p21)};
}

/// Net force on the pair, S(1,2) * F_N with F_N the Newtonian force built
/// from passive masses (oriented as the force ON body 2, i.e. along x1-x2).
/// Equals on_body1 + on_body2 of pairwise_forces; nonzero exactly when the
/// third law is broken.
inline Vec3 net_force(const Body& b1, const Body& b2, double G = constants::G_NEWTON) {
    const auto [x, r2] = detail::separation_checked(b1, b2);
    const double r = std::sqrt(r2);
    const Vec3 k = x / (r2 * r);
    const double p12 = b1.passive_mass * b2.active_mass;
    const double p21 = b2.passive_mass * b1.active_mass;
    // Same arithmetic as pairwise_forces, so the sum identity
    // net == on_body1 + on_body2 holds bit-for-bit (and s=0 cancels exactly).
    return k * (G * p21) + k * (-(G * p12));
}

/// Acceleration of the passive (inertial) center of mass. For a free pair
/// this is the self-acceleration scale; the rigid-composite closed form in
/// the simulation module is the same expression.
inline Vec3 cm_acceleration(const Body& b1, const Body& b2, double G = constants::G_NEWTON) {
    return net_force(b1, b2, G) / (b1.passive_mass + b2.passive_mass);
}

/// Relative acceleration d²(x1-x2)/dt² = -G*(m1a+m2a)*(x1-x2)/|x1-x2|^3.
/// Depends on the active masses only: rescaling both passive masses at fixed
/// active masses leaves relative orbits untouched, which is why two-body
/// orbital data alone cannot see the asymmetry. Algebraically equal to
/// (sigma-1)*F_N/mu with mu the passive reduced mass.
inline Vec3 relative_acceleration(const Body& b1, const Body& b2,
                                  double G = constants::G_NEWTON) {
    const auto [x, r2] = detail::separation_checked(b1, b2);
    const double r = std::sqrt(r2);
    return x * (-G * (b1.active_mass + b2.active_mass) / (r2 * r));
}

} // namespace eapkit
