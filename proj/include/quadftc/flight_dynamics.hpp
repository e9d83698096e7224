#pragma once
#include "quadftc/propulsion.hpp"
#include "quadftc/quad_state.hpp"

namespace quadftc {

// Right-hand side of the 6-DOF rigid-body equations:
//  - force equations with aerodynamic forces zeroed and thrust only along
//    body z,
//  - Euler-angle kinematic equations,
//  - standard ZYX body-to-inertial navigation equations,
//  - full cross-product-of-inertia moment equations.
// Throws GimbalLock when |cos(theta)| < 1e-6 and NonFiniteInput when any
// input component is not finite.
StateDerivative state_derivative(const QuadState& state, const BodyForcesMoments& fm,
                                 const QuadParams& params);

// One classical RK4 step of the coupled propulsion + rigid-body system.
// The control is held constant over the step (zero-order hold); propulsion
// forces are recomputed at every stage from the stage state. Propagates
// GimbalLock / NonFiniteInput from stage evaluations.
QuadState integrate_step(const QuadState& state, const ControlInput& control,
                         const FaultMask& mask, AxesMode mode, const QuadParams& params,
                         double dt);

} // namespace quadftc
