#pragma once

// Umbrella header. The library is header-only; pull in everything.

#include "eapkit/vec3.hpp"
#include "eapkit/errors.hpp"
#include "eapkit/constants.hpp"
#include "eapkit/core_dynamics.hpp"
#include "eapkit/simulation.hpp"
#include "eapkit/uncertainty.hpp"
#include "eapkit/experiment_design.hpp"
#include "eapkit/hermitian.hpp"
#include "eapkit/quantum_eap.hpp"
#include "eapkit/config.hpp"
#include "eapkit/reference_targets.hpp"
