#pragma once

#include <cstdlib>
#include <string>

namespace eapkit {
namespace constants {

/// Newton's constant, m³/(kg·s²). Default value; scenarios may override it,
/// and the CLI honors the EAPKIT_G environment variable for reproduction
/// studies (the sigma bound of interest comes from scatter in measured G).
inline constexpr double G_NEWTON = 6.674e-11;

/// Exact SI defining constants.
inline constexpr double SPEED_OF_LIGHT = 2.99792458e8;  // m/s
inline constexpr double PLANCK = 6.62607015e-34;        // J·s
inline constexpr double ELECTRON_VOLT = 1.602176634e-19; // J

inline constexpr double HBAR = PLANCK / 6.283185307179586476925286766559;

inline constexpr double ANGSTROM = 1e-10; // m

/// Lunar-laser-ranging bound on the active/passive mass asymmetry of the
/// Fe/Al composition difference between the Moon's core and mantle.
/// Stored reference constant: desk-scale code cannot reproduce the ranging
/// analysis, it only surfaces the published bound for comparison output.
inline constexpr double S_LLR = 3.9e-14;

/// Effective G for the current process: EAPKIT_G overrides the default when
/// set to a parseable double, otherwise G_NEWTON.
inline double effective_newton_constant() {
    if (const char* env = std::getenv("EAPKIT_G")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return G_NEWTON;
}

} // namespace constants
} // namespace eapkit
