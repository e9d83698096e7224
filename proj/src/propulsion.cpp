#include "quadftc/propulsion.hpp"

#include <cmath>

namespace quadftc {

double rotor_thrust(double omega, const QuadState& state, const QuadParams& params) {
    const double coef = params.rho * params.a_lift * params.n_blades * params.chord *
                        params.R_rotor / 4.0;
    const double tip = omega * params.R_rotor;
    const double translation = params.thrust_translation_sum_of_squares
                                   ? state.u * state.u + state.v * state.v
                                   : (state.u + state.v) * (state.u + state.v);
    const double f = coef * (state.w * tip +
                             (2.0 / 3.0) * tip * tip * (params.theta0 + 0.75 * params.theta1) +
                             translation * (params.theta0 + 0.5 * params.theta1));
    return f > 0.0 ? f : 0.0;
}

double total_thrust(double f1, double f2, double f3, double f4) {
    return f1 + f2 + f3 + f4;
}

BodyForcesMoments forces_moments(const ControlInput& control, const QuadState& state,
                                 const FaultMask& mask, AxesMode mode,
                                 const QuadParams& params) {
    double f[4];
    for (int i = 0; i < 4; ++i)
        f[i] = mask.is_failed(i + 1) ? 0.0 : rotor_thrust(control.omega[i], state, params);

    BodyForcesMoments out;
    out.fz = -(f[0] + f[1] + f[2] + f[3]);
    if (mode == AxesMode::Standard) {
        out.l_moment = (f[1] - f[0]) * params.Ld;
        out.m_moment = (f[2] - f[3]) * params.Ld;
    } else {
        out.l_moment = (f[1] + f[2]) * params.Ly - (f[0] + f[3]) * params.Ly;
        out.m_moment = (f[0] + f[2]) * params.Lx - (f[1] + f[3]) * params.Lx;
    }
    out.n_moment = params.yaw_moment_literal
                       ? params.c_torque * (f[0] + f[1] + f[2] + f[3])
                       : params.c_torque * (-f[0] - f[1] + f[2] + f[3]);
    return out;
}

TrimSolution solve_trim(const QuadParams& params) {
    params.validate();
    const double f_trim = params.mass * params.g / 4.0;
    const double coef = params.rho * params.a_lift * params.n_blades * params.chord *
                        params.R_rotor / 4.0;
    const double k = coef * (2.0 / 3.0) * params.R_rotor * params.R_rotor *
                     (params.theta0 + 0.75 * params.theta1);
    if (!(k > 0.0))
        throw Unachievable("rest thrust coefficient is not positive");
    const double omega_trim = std::sqrt(f_trim / k);

    QuadState rest;  // zero velocities: only the quadratic term contributes
    if (omega_trim > params.omega_max ||
        rotor_thrust(params.omega_max, rest, params) < f_trim)
        throw Unachievable("required per-rotor thrust exceeds rotor_thrust(omega_max)");
    return {omega_trim, f_trim};
}

} // namespace quadftc
