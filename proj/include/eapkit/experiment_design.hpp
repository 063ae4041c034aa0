#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "eapkit/constants.hpp"
#include "eapkit/core_dynamics.hpp"
#include "eapkit/errors.hpp"
#include "eapkit/uncertainty.hpp"

namespace eapkit {

enum class BoundParameter { S, sigma, S_q };

inline const char* to_string(BoundParameter p) {
    switch (p) {
        case BoundParameter::S: return "S";
        case BoundParameter::sigma: return "sigma";
        case BoundParameter::S_q: return "S_q";
    }
    return "?";
}

/// Constraint-inversion output: |central| and a 1-standard uncertainty, plus
/// an echo of every input that produced it so emitted records are auditable.
struct BoundResult {
    BoundParameter parameter = BoundParameter::S;
    double central = 0.0;
    double uncertainty = 0.0;
    std::vector<std::pair<std::string, double>> inputs;
    std::string formula_id;
};

/// Torsion balance with two source masses matched in passive mass, placed so
/// their Newtonian torques cancel exactly; any residual angular acceleration
/// is pure third-law breakdown. Geometry: test masses on an arm of length d,
/// sources at distance R.
struct CavendishNullConfig {
    double test_mass = 0.0;      // kg
    Measured arm;                // m, the lever arm d
    Measured source_distance;    // m, test-to-source distance R
    Measured source_mass;        // kg, per source; both sources matched
    Measured phi_ddot;           // rad/s², measured angular acceleration
    std::pair<std::string, std::string> materials;

    void validate() const {
        if (!(test_mass > 0.0)) throw DomainError("cavendish-null test_mass must be positive");
        if (!(arm.value > 0.0)) throw DomainError("cavendish-null arm must be positive");
        if (!(source_distance.value > 0.0))
            throw DomainError("cavendish-null source_distance must be positive");
        if (!(source_mass.value > 0.0))
            throw DomainError("cavendish-null source_mass must be positive");
    }
};

/// Conventional Cavendish layout with two (generally different) sources; the
/// measured angular acceleration yields a material-dependent G and thus a
/// sigma bound against a reference G.
struct CavendishStandardConfig {
    double test_mass = 0.0;     // kg
    Measured arm;               // m
    Measured source_offset;     // m, |r_M - d|
    Measured source_mass_1;     // kg
    Measured source_mass_2;     // kg
    Measured phi_ddot;          // rad/s²
    std::pair<std::string, std::string> materials;

    void validate() const {
        if (!(test_mass > 0.0)) throw DomainError("cavendish-standard test_mass must be positive");
        if (!(arm.value > 0.0)) throw DomainError("cavendish-standard arm must be positive");
        if (!(source_offset.value > 0.0))
            throw DomainError("cavendish-standard source_offset must be positive");
        if (!(source_mass_1.value > 0.0) || !(source_mass_2.value > 0.0))
            throw DomainError("cavendish-standard source masses must be positive");
    }
};

/// Two face-to-face uniform films (total thickness a, each a/2) of footprint
/// b x c, free falling; a drag-free accelerometer reading bounds S.
struct SlabConfig {
    double rho1 = 0.0;       // kg/m³
    double rho2 = 0.0;       // kg/m³
    double thickness = 0.0;  // m, a
    double length = 0.0;     // m, b
    double width = 0.0;      // m, c
    double resolution = 0.0; // m/s², accelerometer noise floor
    std::pair<std::string, std::string> materials;

    void validate() const {
        if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw DomainError("slab densities must be positive");
        if (!(thickness > 0.0)) throw DomainError("slab thickness must be positive");
        if (!(length > 0.0) || !(width > 0.0))
            throw DomainError("slab length and width must be positive");
        if (!(resolution > 0.0)) throw DomainError("slab resolution must be positive");
    }
    /// Thin-film regime check; the closed form assumes a << b, c.
    bool thin_film_ok() const { return thickness <= std::min(length, width) / 100.0; }
};

/// Total torque on the balance before source matching,
///   tau = G*m*d/R^2 * ((1-sigma12)*(M1p - M2p) - 2*mu*S12),
/// mu the sources' passive reduced mass. With matched sources the first term
/// dies and only the S12 piece survives, which is the whole point of the
/// null design. Sign follows the orientation in which source 1 pulls the
/// positive arm forward.
inline double cavendish_torque_general(double test_mass, double arm, double source_distance,
                                       double M1p, double M2p, ViolationParams assumed,
                                       double G = constants::G_NEWTON) {
    const double mu = M1p * M2p / (M1p + M2p);
    const double bracket = (1.0 - assumed.sigma) * (M1p - M2p) - 2.0 * mu * assumed.s;
    return G * test_mass * arm / (source_distance * source_distance) * bracket;
}

inline double null_cavendish_torque(const CavendishNullConfig& cfg, ViolationParams assumed,
                                    double G = constants::G_NEWTON) {
    cfg.validate();
    return cavendish_torque_general(cfg.test_mass, cfg.arm.value, cfg.source_distance.value,
                                    cfg.source_mass.value, cfg.source_mass.value, assumed, G);
}

/// Angular acceleration magnitude for an assumed S. Uses I = m*d²; the
/// two-arm/two-source doubling cancels between torque and moment of inertia.
inline double null_cavendish_phi_ddot(const CavendishNullConfig& cfg, double s,
                                      double G = constants::G_NEWTON) {
    cfg.validate();
    return G * cfg.source_mass.value * std::abs(s) /
           (cfg.arm.value * cfg.source_distance.value * cfg.source_distance.value);
}

namespace detail {

inline void echo(std::vector<std::pair<std::string, double>>& v, const std::string& key,
                 const Measured& m) {
    v.emplace_back(key, m.value);
    v.emplace_back(key + "_sigma", m.sigma);
}

} // namespace detail

/// S = phi_ddot * d * R^2 / (G * M_p). The product-form propagation keeps the
/// geometry uncertainties alive even at phi_ddot = 0 (they enter as the
/// second-order cross terms of the product variance, tiny but reported).
inline BoundResult invert_S_null(const CavendishNullConfig& cfg,
                                 double G = constants::G_NEWTON) {
    cfg.validate();
    const Measured geometry = mul(cfg.arm, squared(cfg.source_distance));
    const Measured k = divide(geometry, scale(cfg.source_mass, G));
    const Measured s = mul(cfg.phi_ddot, k);

    BoundResult out;
    out.parameter = BoundParameter::S;
    out.central = std::abs(s.value);
    out.uncertainty = s.sigma;
    out.formula_id = "S-null/phi_ddot*d*R^2/(G*M)";
    out.inputs.emplace_back("test_mass", cfg.test_mass);
    detail::echo(out.inputs, "arm", cfg.arm);
    detail::echo(out.inputs, "source_distance", cfg.source_distance);
    detail::echo(out.inputs, "source_mass", cfg.source_mass);
    detail::echo(out.inputs, "phi_ddot", cfg.phi_ddot);
    out.inputs.emplace_back("G", G);
    return out;
}

/// Material-dependent G12 = phi_ddot*d*|r_M-d|^2/(M1p+M2p), then
/// sigma12 = 1 - G12/G_ref, propagating the reference-G uncertainty too.
inline BoundResult invert_sigma_standard(const CavendishStandardConfig& cfg,
                                         const Measured& g_reference) {
    cfg.validate();
    if (!(g_reference.value > 0.0))
        throw DomainError("cavendish-standard g_reference must be positive");
    const Measured geometry = mul(cfg.arm, squared(cfg.source_offset));
    const Measured g12 =
        divide(mul(cfg.phi_ddot, geometry), add(cfg.source_mass_1, cfg.source_mass_2));
    const Measured q = divide(g12, g_reference);

    BoundResult out;
    out.parameter = BoundParameter::sigma;
    out.central = std::abs(1.0 - q.value);
    out.uncertainty = q.sigma;
    out.formula_id = "sigma-standard/1-G12/Gref";
    out.inputs.emplace_back("test_mass", cfg.test_mass);
    detail::echo(out.inputs, "arm", cfg.arm);
    detail::echo(out.inputs, "source_offset", cfg.source_offset);
    detail::echo(out.inputs, "source_mass_1", cfg.source_mass_1);
    detail::echo(out.inputs, "source_mass_2", cfg.source_mass_2);
    detail::echo(out.inputs, "phi_ddot", cfg.phi_ddot);
    detail::echo(out.inputs, "g_reference", g_reference);
    return out;
}

/// Closed-form self-acceleration of the falling bi-layer slab,
///   |Xdd| = S * G * (rho1*rho2/(rho1+rho2)) * (b*c/a).
/// This is the published point-lump estimate: it equals the two-point rigid
/// composite formula with the films collapsed to points at effective
/// separation a/sqrt(2) (at the literal CM separation a/2 the two-point
/// value is exactly twice this).
inline double slab_self_acceleration(const SlabConfig& cfg, double s,
                                     double G = constants::G_NEWTON) {
    cfg.validate();
    const double rho_mu = cfg.rho1 * cfg.rho2 / (cfg.rho1 + cfg.rho2);
    return s * G * rho_mu * (cfg.length * cfg.width / cfg.thickness);
}

inline BoundResult invert_S_slab(const SlabConfig& cfg, double G = constants::G_NEWTON) {
    cfg.validate();
    const double rho_mu = cfg.rho1 * cfg.rho2 / (cfg.rho1 + cfg.rho2);
    const double bound = cfg.resolution * cfg.thickness / (G * rho_mu * cfg.length * cfg.width);

    BoundResult out;
    out.parameter = BoundParameter::S;
    out.central = 0.0;
    out.uncertainty = bound;
    out.formula_id = "S-slab/point-lump";
    out.inputs.emplace_back("rho1", cfg.rho1);
    out.inputs.emplace_back("rho2", cfg.rho2);
    out.inputs.emplace_back("thickness", cfg.thickness);
    out.inputs.emplace_back("length", cfg.length);
    out.inputs.emplace_back("width", cfg.width);
    out.inputs.emplace_back("resolution", cfg.resolution);
    out.inputs.emplace_back("G", G);
    return out;
}

/// Bundled densities, kg/m³ (bulk room-temperature handbook values; sources
/// in docs/materials.md). Lookup is case-insensitive; spaces and underscores
/// match hyphens.
inline double material_lookup(const std::string& label) {
    static constexpr std::array<std::pair<const char*, double>, 11> table{{
        {"gold", 1.93e4},
        {"platinum", 2.145e4},
        {"tungsten", 1.925e4},
        {"lead", 1.134e4},
        {"stainless-steel", 7.90e3},
        {"aluminum", 2.70e3},
        {"iron", 7.874e3},
        {"teflon", 2.20e3},
        {"ptfe", 2.20e3},
        {"caf2", 3.18e3},
        {"calcium-fluoride", 3.18e3},
    }};
    std::string key;
    key.reserve(label.size());
    for (char c : label) {
        if (c == ' ' || c == '_') key.push_back('-');
        else key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (const auto& [name, density] : table)
        if (key == name) return density;

    std::string msg = "unknown material '" + label + "'; available:";
    for (const auto& [name, density] : table) {
        msg += ' ';
        msg += name;
    }
    throw UnknownMaterial(msg);
}

} // namespace eapkit
