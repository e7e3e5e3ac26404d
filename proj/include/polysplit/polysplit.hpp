#pragma once

// Umbrella header: high-order palindromic splitting integrators for separable
// Hamiltonians with polynomial potentials, plus the verification and
// benchmarking toolkit built around them.

#include "bench.hpp"
#include "builtin_schemes.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "lie_poly.hpp"
#include "order_conditions.hpp"
#include "rng.hpp"
#include "scheme.hpp"
#include "scheme_io.hpp"
#include "spectral.hpp"
#include "systems.hpp"
