#include "quadftc/flight_dynamics.hpp"

#include <cmath>

namespace quadftc {

StateDerivative state_derivative(const QuadState& state, const BodyForcesMoments& fm,
                                 const QuadParams& params) {
    if (!state.finite() || !std::isfinite(fm.fz) || !std::isfinite(fm.l_moment) ||
        !std::isfinite(fm.m_moment) || !std::isfinite(fm.n_moment))
        throw NonFiniteInput();

    const double sphi = std::sin(state.phi), cphi = std::cos(state.phi);
    const double sth = std::sin(state.theta), cth = std::cos(state.theta);
    const double spsi = std::sin(state.psi), cpsi = std::cos(state.psi);
    if (std::fabs(cth) < 1e-6) throw GimbalLock();

    const double u = state.u, v = state.v, w = state.w;
    const double p = state.p, q = state.q, r = state.r;
    const double g = params.g;

    StateDerivative d;

    // Force equations (aero forces zero, thrust along body z only).
    d.u_dot = r * v - q * w - g * sth;
    d.v_dot = -r * u + p * w + g * sphi * cth;
    d.w_dot = q * u - p * v + g * cphi * cth + fm.fz / params.mass;

    // Kinematic equations.
    d.phi_dot = p + std::tan(state.theta) * (q * sphi + r * cphi);
    d.theta_dot = q * cphi - r * sphi;
    d.psi_dot = (q * sphi + r * cphi) / cth;

    // Navigation: standard ZYX body-to-inertial rotation.
    d.xn_dot = u * cpsi * cth + v * (cpsi * sth * sphi - spsi * cphi) +
               w * (cpsi * sth * cphi + spsi * sphi);
    d.yn_dot = u * spsi * cth + v * (spsi * sth * sphi + cpsi * cphi) +
               w * (spsi * sth * cphi - cpsi * sphi);
    d.zn_dot = -u * sth + v * cth * sphi + w * cphi * cth;

    // Moment equations with the full Jxz cross terms. The shared denominator
    // Jxz^2 - Jx*Jz is nonzero whenever the inertia tensor is positive
    // definite.
    const double Jx = params.Jx, Jy = params.Jy, Jz = params.Jz, Jxz = params.Jxz;
    const double Mx = fm.l_moment, My = fm.m_moment, Mz = fm.n_moment;
    const double den = Jxz * Jxz - Jx * Jz;
    d.p_dot = -(Jz * Mx + Jxz * Mz - Jxz * Jxz * q * r - Jz * Jz * q * r +
                Jx * Jxz * p * q - Jxz * Jy * p * q + Jxz * Jz * p * q + Jy * Jz * q * r) /
              den;
    d.q_dot = (My - Jxz * p * p + Jxz * r * r - Jx * p * r + Jz * p * r) / Jy;
    d.r_dot = -(Jxz * Mx + Jx * Mz + Jx * Jx * p * q + Jxz * Jxz * p * q - Jx * Jy * p * q -
                Jx * Jxz * q * r + Jxz * Jy * q * r - Jxz * Jz * q * r) /
              den;

    return d;
}

namespace {

QuadState axpy(const QuadState& s, const StateDerivative& d, double h) {
    const auto sa = s.as_array();
    const auto da = d.as_array();
    std::array<double, 12> out;
    for (int i = 0; i < 12; ++i) out[i] = sa[i] + h * da[i];
    return QuadState::from_array(out);
}

} // namespace

QuadState integrate_step(const QuadState& state, const ControlInput& control,
                         const FaultMask& mask, AxesMode mode, const QuadParams& params,
                         double dt) {
    auto rhs = [&](const QuadState& s) {
        return state_derivative(s, forces_moments(control, s, mask, mode, params), params);
    };

    const StateDerivative k1 = rhs(state);
    const StateDerivative k2 = rhs(axpy(state, k1, 0.5 * dt));
    const StateDerivative k3 = rhs(axpy(state, k2, 0.5 * dt));
    const StateDerivative k4 = rhs(axpy(state, k3, dt));

    const auto sa = state.as_array();
    const auto a1 = k1.as_array(), a2 = k2.as_array(), a3 = k3.as_array(), a4 = k4.as_array();
    std::array<double, 12> out;
    for (int i = 0; i < 12; ++i)
        out[i] = sa[i] + dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
    return QuadState::from_array(out);
}

} // namespace quadftc
