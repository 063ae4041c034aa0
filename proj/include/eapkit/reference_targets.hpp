#pragma once

#include <array>

namespace eapkit {

/// Stored reference value for one bundled scenario: the sensitivity the
/// design was published with, plus the acceptance window our reproduction
/// must land in. Windows are deliberately loose (the references carry one
/// significant figure) and are the same ones the acceptance suite enforces.
struct ReferenceTarget {
    const char* name;       // human-readable row label
    const char* scenario;   // bundled scenario id
    const char* parameter;  // S, sigma or S_q
    double reference;       // stored reference value
    double window_lo;
    double window_hi;
};

inline constexpr std::array<ReferenceTarget, 7> REFERENCE_TARGETS{{
    {"null-balance case i (dS)", "table1_case_i", "S", 1e-4, 5e-5, 3e-4},
    {"null-balance case ii (dS)", "table1_case_ii", "S", 1e-9, 5e-10, 5e-9},
    {"slab 10 um (S)", "table2_case_1", "S", 1e-14, 5e-15, 2e-14},
    {"slab 1 nm (S)", "table2_case_2", "S", 1e-18, 5e-19, 2e-18},
    {"Na-Cs ground (S_q)", "sq_nacs_ground", "S_q", 6e17, 6e16, 6e18},
    {"Na-Cs space (S_q)", "sq_nacs_space", "S_q", 1e12, 1e11, 1e13},
    {"Th-229 film (S_q)", "sq_thorium", "S_q", 1.0, 0.1, 10.0},
}};

} // namespace eapkit
