#include <doctest.h>

#include <cmath>

#include "quadftc/flight_dynamics.hpp"
#include "quadftc/rng.hpp"

using namespace quadftc;

namespace {

// Test-only params whose rotors produce exactly zero force at zero speed,
// killing the translation term as well (theta0 = theta1 = 0). Lets the
// integrator be driven as a pure rigid body under gravity.
QuadParams zero_thrust_params() {
    QuadParams p;
    p.theta0 = 0.0;
    p.theta1 = 0.0;
    return p;
}

double max_abs_diff(const QuadState& a, const QuadState& b) {
    const auto xa = a.as_array(), xb = b.as_array();
    double m = 0.0;
    for (int i = 0; i < 12; ++i) m = std::max(m, std::fabs(xa[i] - xb[i]));
    return m;
}

// Independent oracle for the rotational accelerations: solve the coupled
// roll/yaw pair from the standard rigid-body equations with a product of
// inertia, instead of using the expanded closed forms.
void euler_oracle(const QuadState& s, const BodyForcesMoments& fm, const QuadParams& prm,
                  double& p_dot, double& q_dot, double& r_dot) {
    const double Jx = prm.Jx, Jy = prm.Jy, Jz = prm.Jz, Jxz = prm.Jxz;
    const double p = s.p, q = s.q, r = s.r;
    const double b1 = fm.l_moment + Jxz * p * q - (Jz - Jy) * q * r;
    const double b2 = fm.n_moment - Jxz * q * r - (Jy - Jx) * p * q;
    const double det = Jx * Jz - Jxz * Jxz;
    p_dot = (Jz * b1 + Jxz * b2) / det;
    r_dot = (Jxz * b1 + Jx * b2) / det;
    q_dot = (fm.m_moment - Jxz * p * p + Jxz * r * r - Jx * p * r + Jz * p * r) / Jy;
}

} // namespace

TEST_CASE("hover trim state has identically zero derivatives") {
    QuadParams p;
    QuadState s;
    s.zn = -100.0;
    BodyForcesMoments fm;
    fm.fz = -p.mass * p.g;
    const auto d = state_derivative(s, fm, p);
    for (double v : d.as_array()) CHECK(std::fabs(v) < 1e-9);
}

TEST_CASE("navigation reduces to body velocities at zero Euler angles") {
    QuadParams p;
    QuadState s;
    s.u = 3.0;
    const auto d = state_derivative(s, BodyForcesMoments{}, p);
    CHECK(d.xn_dot == 3.0);
    CHECK(d.yn_dot == 0.0);
    CHECK(d.zn_dot == 0.0);

    QuadState s2;
    s2.u = 1.5;
    s2.v = -2.5;
    s2.w = 0.75;
    const auto d2 = state_derivative(s2, BodyForcesMoments{}, p);
    CHECK(d2.xn_dot == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(d2.yn_dot == doctest::Approx(-2.5).epsilon(1e-15));
    CHECK(d2.zn_dot == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("pitch acceleration with symmetric inertia matches hand evaluation") {
    QuadParams prm;
    prm.Jx = 0.02;
    prm.Jy = 0.03;
    prm.Jz = 0.04;
    prm.Jxz = 0.0;
    QuadState s;
    s.p = 1.0;
    s.r = 2.0;
    const auto d = state_derivative(s, BodyForcesMoments{}, prm);
    // (Jz - Jx) * p * r / Jy = (0.04 - 0.02)*2/0.03
    CHECK(d.q_dot == doctest::Approx((0.04 - 0.02) * 2.0 / 0.03).epsilon(1e-12));
    CHECK(d.q_dot == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("moment equations match the inertia-solve oracle with Jxz") {
    QuadParams prm;
    prm.Jx = 0.025;
    prm.Jy = 0.030;
    prm.Jz = 0.045;
    prm.Jxz = 0.004;
    SplitMix64 rng(21);
    for (int i = 0; i < 300; ++i) {
        QuadState s;
        s.p = rng.uniform(-4, 4);
        s.q = rng.uniform(-4, 4);
        s.r = rng.uniform(-4, 4);
        BodyForcesMoments fm;
        fm.l_moment = rng.uniform(-2, 2);
        fm.m_moment = rng.uniform(-2, 2);
        fm.n_moment = rng.uniform(-2, 2);
        const auto d = state_derivative(s, fm, prm);
        double pd, qd, rd;
        euler_oracle(s, fm, prm, pd, qd, rd);
        CHECK(d.p_dot == doctest::Approx(pd).epsilon(1e-10));
        CHECK(d.q_dot == doctest::Approx(qd).epsilon(1e-10));
        CHECK(d.r_dot == doctest::Approx(rd).epsilon(1e-10));
    }
}

TEST_CASE("pure yaw spin about the principal axis is a rotational equilibrium") {
    QuadParams prm;
    prm.Jxz = 0.0;
    QuadState s;
    s.r = 3.0;
    const auto d = state_derivative(s, BodyForcesMoments{}, prm);
    CHECK(d.p_dot == 0.0);
    CHECK(d.q_dot == 0.0);
    CHECK(d.r_dot == 0.0);
}

TEST_CASE("gimbal lock raises near theta = +-pi/2") {
    QuadParams p;
    QuadState s;
    s.theta = std::acos(0.5e-6);  // |cos(theta)| below the 1e-6 guard
    CHECK_THROWS_AS(state_derivative(s, BodyForcesMoments{}, p), GimbalLock);
    s.theta = 1.5;  // close to the pole but evaluable
    CHECK_NOTHROW(state_derivative(s, BodyForcesMoments{}, p));
}

TEST_CASE("non-finite inputs raise") {
    QuadParams p;
    QuadState s;
    s.u = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(state_derivative(s, BodyForcesMoments{}, p), NonFiniteInput);
    QuadState s2;
    BodyForcesMoments fm;
    fm.fz = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(state_derivative(s2, fm, p), NonFiniteInput);
}

TEST_CASE("integrate_step holds the trim fixed point") {
    QuadParams p;
    const auto trim = solve_trim(p);
    QuadState s;
    s.zn = -100.0;
    ControlInput c;
    for (auto& o : c.omega) o = trim.omega_trim;
    const QuadState next = integrate_step(s, c, FaultMask{}, AxesMode::Transformed, p, 0.01);
    CHECK(max_abs_diff(s, next) < 1e-12);
}

TEST_CASE("integrate_step reproduces constant-acceleration free fall") {
    const QuadParams p = zero_thrust_params();
    QuadState s;
    s.zn = -100.0;
    ControlInput off;
    for (int i = 0; i < 100; ++i)
        s = integrate_step(s, off, FaultMask{}, AxesMode::Transformed, p, 0.01);
    CHECK(std::fabs(s.w - 9.81) < 1e-6);
    CHECK(std::fabs(s.zn - (-100.0 + 0.5 * 9.81)) < 1e-6);
    CHECK(std::fabs(s.zn - (-95.095)) < 1e-6);
}

TEST_CASE("integrator conserves energy for torque-free fall at fixed attitude") {
    const QuadParams p = zero_thrust_params();
    SplitMix64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        QuadState s;
        s.zn = -100.0;
        s.phi = rng.uniform(-0.8, 0.8);
        s.theta = rng.uniform(-0.8, 0.8);
        s.psi = rng.uniform(-3, 3);
        s.u = rng.uniform(-3, 3);
        s.v = rng.uniform(-3, 3);
        s.w = rng.uniform(-3, 3);
        auto energy = [&](const QuadState& x) {
            return 0.5 * p.mass * (x.u * x.u + x.v * x.v + x.w * x.w) - p.mass * p.g * x.zn;
        };
        const double e0 = energy(s);
        ControlInput off;
        for (int i = 0; i < 100; ++i)
            s = integrate_step(s, off, FaultMask{}, AxesMode::Transformed, p, 0.01);
        CHECK(std::fabs(energy(s) - e0) / std::fabs(e0) < 1e-8);
    }
}

TEST_CASE("integrate_step converges at fourth order") {
    const QuadParams p = zero_thrust_params();
    QuadState init;
    init.zn = -100.0;
    init.p = 0.4;
    init.q = 0.25;
    init.r = 0.6;
    init.u = 1.0;

    auto propagate = [&](double dt, int steps) {
        QuadState s = init;
        ControlInput off;
        for (int i = 0; i < steps; ++i)
            s = integrate_step(s, off, FaultMask{}, AxesMode::Transformed, p, dt);
        return s;
    };
    const QuadState ref = propagate(0.00125, 800);  // dt/8 reference
    const double e1 = max_abs_diff(propagate(0.01, 100), ref);
    const double e2 = max_abs_diff(propagate(0.005, 200), ref);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.8);
    CHECK(order < 4.2);
}

TEST_CASE("integrate_step propagates stage errors") {
    QuadParams p;
    QuadState s;
    s.theta = std::acos(0.5e-6);
    ControlInput c;
    CHECK_THROWS_AS(integrate_step(s, c, FaultMask{}, AxesMode::Transformed, p, 0.01),
                    GimbalLock);
}

TEST_CASE("invalid inertia tensor is rejected") {
    QuadParams p;
    p.Jxz = 0.2;  // Jxz^2 >= Jx*Jz
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
