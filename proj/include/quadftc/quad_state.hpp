#pragma once
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace quadftc {

// Rigid-body state, NED body/inertial conventions. zn is positive DOWN:
// "100 m above ground" is zn = -100, ground contact is zn >= 0.
struct QuadState {
    double u = 0.0;   // body x velocity, m/s
    double v = 0.0;   // body y velocity, m/s
    double w = 0.0;   // body z velocity (down positive), m/s
    double p = 0.0;   // roll rate, rad/s
    double q = 0.0;   // pitch rate, rad/s
    double r = 0.0;   // yaw rate, rad/s
    double phi = 0.0;   // roll, rad
    double theta = 0.0; // pitch, rad; must stay inside (-pi/2, pi/2)
    double psi = 0.0;   // yaw, rad; unwrapped, grows without bound
    double xn = 0.0;  // north position, m
    double yn = 0.0;  // east position, m
    double zn = 0.0;  // down position, m

    std::array<double, 12> as_array() const {
        return {u, v, w, p, q, r, phi, theta, psi, xn, yn, zn};
    }
    static QuadState from_array(const std::array<double, 12>& a) {
        QuadState s;
        s.u = a[0]; s.v = a[1]; s.w = a[2];
        s.p = a[3]; s.q = a[4]; s.r = a[5];
        s.phi = a[6]; s.theta = a[7]; s.psi = a[8];
        s.xn = a[9]; s.yn = a[10]; s.zn = a[11];
        return s;
    }
    bool finite() const {
        for (double x : as_array())
            if (!std::isfinite(x)) return false;
        return true;
    }
};

// Time derivative of QuadState, same component order.
struct StateDerivative {
    double u_dot = 0.0, v_dot = 0.0, w_dot = 0.0;
    double p_dot = 0.0, q_dot = 0.0, r_dot = 0.0;
    double phi_dot = 0.0, theta_dot = 0.0, psi_dot = 0.0;
    double xn_dot = 0.0, yn_dot = 0.0, zn_dot = 0.0;

    std::array<double, 12> as_array() const {
        return {u_dot, v_dot, w_dot, p_dot, q_dot, r_dot,
                phi_dot, theta_dot, psi_dot, xn_dot, yn_dot, zn_dot};
    }
};

// Mass, inertia, geometry and propeller constants. Values are data, not
// physics: everything here comes from the run config.
struct QuadParams {
    double mass = 1.5;   // kg
    double g = 9.81;     // m/s^2
    double Jx = 0.15;    // kg m^2
    double Jy = 0.15;    // kg m^2
    double Jz = 0.225;   // kg m^2
    double Jxz = 0.0;    // kg m^2, cross product of inertia
    double Lx = 0.05 / 1.4142135623730951;  // transformed-axes arm, m
    double Ly = 0.05 / 1.4142135623730951;  // transformed-axes arm, m
    double Ld = 0.05;    // standard-axes arm, m
    double c_torque = 0.35;  // thrust-to-yaw-moment arm, m
    double rho = 1.225;  // air density, kg/m^3
    double a_lift = 5.7; // blade lift-curve slope, 1/rad
    double n_blades = 2.0;
    double chord = 0.02; // blade chord, m
    double R_rotor = 0.12;   // rotor radius, m
    double theta0 = 0.20;    // blade pitch constant, rad
    double theta1 = -0.05;   // blade twist constant, rad
    double omega_max = 1075.0;  // rad/s

    // Fidelity switches for the two dimensionally irregular printed forms.
    bool yaw_moment_literal = false;           // N = c*(F1+F2+F3+F4)
    bool thrust_translation_sum_of_squares = false;  // (U^2+V^2) instead of (U+V)^2

    void validate() const {
        auto fail = [](const std::string& msg) { throw std::invalid_argument("QuadParams: " + msg); };
        if (!(mass > 0)) fail("mass must be > 0");
        if (!(Jx > 0 && Jy > 0 && Jz > 0)) fail("Jx, Jy, Jz must be > 0");
        if (!(Jxz * Jxz < Jx * Jz)) fail("Jxz^2 must be < Jx*Jz");
        if (!(Lx > 0 && Ly > 0 && Ld > 0)) fail("moment arms must be > 0");
        if (!(c_torque > 0)) fail("c_torque must be > 0");
        if (!(rho > 0 && a_lift > 0 && chord > 0 && R_rotor > 0)) fail("rotor constants must be > 0");
        if (!(omega_max > 0)) fail("omega_max must be > 0");
    }
};

// Net body force along z plus body moments, the only load path in this model.
struct BodyForcesMoments {
    double fz = 0.0;        // N, negative = thrust up
    double l_moment = 0.0;  // N m, roll
    double m_moment = 0.0;  // N m, pitch
    double n_moment = 0.0;  // N m, yaw
};

struct GimbalLock : std::runtime_error {
    GimbalLock() : std::runtime_error("kinematic singularity: |cos(theta)| < 1e-6") {}
};

struct NonFiniteInput : std::runtime_error {
    NonFiniteInput() : std::runtime_error("non-finite value in state or forces") {}
};

} // namespace quadftc
