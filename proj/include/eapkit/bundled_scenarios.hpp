#pragma once

#include <array>
#include <string>
#include <utility>

#include "eapkit/errors.hpp"

namespace eapkit {

// Bundled scenario texts. These strings are the single source of truth; the
// files under scenarios/ carry byte-identical copies for editing convenience
// and a test keeps the two in sync. The `tables` subcommand and the
// acceptance suite run from these, so they work with no filesystem access.

inline constexpr const char* SCENARIO_TABLE1_CASE_I =
    R"(# Null-source torsion balance, bench-top case.
# The two source masses are matched in passive mass but differ in material,
# so the Newtonian torque cancels and residual angular acceleration reads S.
[cavendish_null]
test_mass = 0.05
arm = 0.1
source_distance = 0.1
source_mass = 10
phi_ddot = 0
phi_ddot_sigma = 1e-10
material_1 = gold
material_2 = platinum
)";

inline constexpr const char* SCENARIO_TABLE1_CASE_II =
    R"(# Null-source torsion balance, short-arm high-resolution case.
[cavendish_null]
test_mass = 0.001
arm = 5e-3
source_distance = 0.02
source_mass = 10
phi_ddot = 0
phi_ddot_sigma = 1e-12
material_1 = gold
material_2 = platinum
)";

inline constexpr const char* SCENARIO_TABLE2_CASE_1 =
    R"(# Free-falling bi-layer slab, 10 um films.
# Densities pinned to the design's rounded values; remove rho1/rho2 to use
# the bundled material table instead.
[slab]
material_1 = gold
material_2 = platinum
rho1 = 1.9e4
rho2 = 2.1e4
thickness = 1e-5
length = 1
width = 1
resolution = 1e-15
)";

inline constexpr const char* SCENARIO_TABLE2_CASE_2 =
    R"(# Free-falling bi-layer slab, 1 nm films.
[slab]
material_1 = gold
material_2 = platinum
rho1 = 1.9e4
rho2 = 2.1e4
thickness = 1e-9
length = 1
width = 1
resolution = 1e-15
)";

inline constexpr const char* SCENARIO_SQ_NACS_GROUND =
    R"(# Na-Cs molecule, ground-based accelerometry.
# System 1 carries the electronic superposition (Na optical transition);
# system 2 is the heavier companion entering the mass ratio.
[sq_bound]
m1p = 4e-26
m2p = 2e-25
separation = 1e-9
mean_transition_energy_per_c2 = 5e-36
n_systems = 1
resolution = 1e-10
)";

inline constexpr const char* SCENARIO_SQ_NACS_SPACE =
    R"(# Na-Cs molecule at drag-free space-grade resolution.
[sq_bound]
m1p = 4e-26
m2p = 2e-25
separation = 1e-9
mean_transition_energy_per_c2 = 5e-36
n_systems = 1
resolution = 1e-15
)";

inline constexpr const char* SCENARIO_SQ_THORIUM =
    R"(# Th-229 nuclear transition doped into CaF2 films.
# Film masses: 1e-12 m^3 of CaF2 (3180 kg/m^3) each, e.g. 1 mm x 1 mm x 1 um.
[sq_bound]
m1p = 3.18e-9
m2p = 3.18e-9
separation = 1e-7
transition_wavelength = 148e-9
n_systems = 1e16
resolution = 1e-15
)";

inline constexpr const char* SCENARIO_CAVENDISH_STANDARD_GSCATTER =
    R"(# Conventional two-source Cavendish read as a G12 measurement.
# phi_ddot sits exactly at the Newtonian prediction for these sources, so the
# sigma bound is set by the reference-G scatter (1e-4 relative).
[cavendish_standard]
test_mass = 0.05
arm = 0.1
source_offset = 0.1
source_mass_1 = 10
source_mass_2 = 10
phi_ddot = 1.3348e-6
phi_ddot_sigma = 1e-12
g_reference = 6.674e-11
g_reference_sigma = 6.674e-15
material_1 = gold
material_2 = platinum
)";

inline constexpr const char* SCENARIO_NBODY_DUMBBELL =
    R"(# Rigid dumbbell with a 2x active/passive asymmetry: the composite
# accelerates itself along its own axis. Compare the trajectory against the
# closed-form rigid self-acceleration.
[nbody]
bodies = 2
dt = 0.5
steps = 2000
[body.0]
passive_mass = 1
active_mass = 2
x = 0.05
[body.1]
passive_mass = 1
active_mass = 1
x = -0.05
[link.0]
a = 0
b = 1
)";

inline constexpr const char* SCENARIO_QUANTUM_CLOCK_NACS =
    R"(# Two-level Na clock beside a Cs companion: superposed internal energy
# makes the branch self-accelerations differ under the null-superposition
# source model.
[quantum_clock]
m1p = 4e-26
m2p = 2e-25
separation = 1e-9
transition_energy = 4.4938e-19
model = null_superposition
state = equal
)";

inline constexpr const char* SCENARIO_OVERLAP_NACS =
    R"(# Charge-cloud overlap of Na and Cs at bound separation, plus the
# separation reconstructed from a 10 GHz binding energy.
[overlap]
alpha1 = 1.8e-10
alpha2 = 2.6e-10
separation = 2e-10
binding_energy = 6.62607015e-24
reference_energy = 1.602176634e-19
)";

struct BundledScenario {
    const char* id;
    const char* text;
};

inline constexpr std::array<BundledScenario, 11> BUNDLED_SCENARIOS{{
    {"table1_case_i", SCENARIO_TABLE1_CASE_I},
    {"table1_case_ii", SCENARIO_TABLE1_CASE_II},
    {"table2_case_1", SCENARIO_TABLE2_CASE_1},
    {"table2_case_2", SCENARIO_TABLE2_CASE_2},
    {"sq_nacs_ground", SCENARIO_SQ_NACS_GROUND},
    {"sq_nacs_space", SCENARIO_SQ_NACS_SPACE},
    {"sq_thorium", SCENARIO_SQ_THORIUM},
    {"cavendish_standard_gscatter", SCENARIO_CAVENDISH_STANDARD_GSCATTER},
    {"nbody_dumbbell", SCENARIO_NBODY_DUMBBELL},
    {"quantum_clock_nacs", SCENARIO_QUANTUM_CLOCK_NACS},
    {"overlap_nacs", SCENARIO_OVERLAP_NACS},
}};

inline const char* bundled_scenario_text(const std::string& id) {
    for (const auto& s : BUNDLED_SCENARIOS)
        if (id == s.id) return s.text;
    throw ConfigError("unknown bundled scenario '" + id + "'");
}

} // namespace eapkit
