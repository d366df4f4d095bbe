#ifndef KEPLERGEO_KEPLERGEO_HPP
#define KEPLERGEO_KEPLERGEO_HPP

// Umbrella header for the whole toolkit: the Kepler system, geodesic motion
// on constant-curvature 3-spaces, the canonical maps between their charts,
// the parameter dictionary relating the two flows, and the numerical
// machinery used to verify all of it.

#include "keplergeo/bracket_table.hpp"
#include "keplergeo/canonical.hpp"
#include "keplergeo/curvature.hpp"
#include "keplergeo/duality.hpp"
#include "keplergeo/errors.hpp"
#include "keplergeo/flows.hpp"
#include "keplergeo/io.hpp"
#include "keplergeo/kepler.hpp"
#include "keplergeo/phase.hpp"
#include "keplergeo/poisson.hpp"
#include "keplergeo/rk54.hpp"
#include "keplergeo/scalar_field.hpp"
#include "keplergeo/stencils.hpp"
#include "keplergeo/symplectic.hpp"
#include "keplergeo/vec3.hpp"
#include "keplergeo/verify.hpp"

#endif
