#pragma once

#include <random>

#include "esdlab/core_state.hpp"

namespace esdlab {

/// Uniform (Dirichlet(1,1,1,1)) populations with coherences drawn uniformly
/// inside the positivity disks |z| <= sqrt(bc), |w| <= sqrt(ad).
XState random_xstate(std::mt19937_64& rng);

/// random_xstate conditioned on concurrence above `min_concurrence`.
XState random_entangled_xstate(std::mt19937_64& rng, double min_concurrence = 1e-6);

/// random_xstate with w = 0.
XState random_wzero_xstate(std::mt19937_64& rng);

}  // namespace esdlab
