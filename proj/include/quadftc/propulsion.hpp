#pragma once
#include <array>
#include <optional>
#include <stdexcept>

#include "quadftc/quad_state.hpp"

namespace quadftc {

// Commanded rotor angular speeds, rad/s, one per rotor.
struct ControlInput {
    std::array<double, 4> omega{0.0, 0.0, 0.0, 0.0};
};

// Single failed rotor; the failed rotor produces no thrust and no torque
// regardless of its commanded speed. Rotor indices are 1-based as in the
// airframe drawings.
struct FaultMask {
    std::optional<int> failed;  // 1..4

    bool is_failed(int rotor_1based) const {
        return failed.has_value() && *failed == rotor_1based;
    }
};

// Standard axes: arms along body x/y. Transformed axes: the frame rotated
// 45 degrees in-plane so three live rotors keep authority in both roll and
// pitch after one failure.
enum class AxesMode { Standard, Transformed };

struct Unachievable : std::runtime_error {
    explicit Unachievable(const std::string& msg) : std::runtime_error(msg) {}
};

// Per-rotor thrust from blade-element integration:
//   F = (rho*a*b*c*R/4) * [ W*Om*R + (2/3)(Om*R)^2 (th0 + 3/4 th1)
//                           + (U+V)^2 (th0 + 1/2 th1) ]
// clamped at zero from below (a fixed-pitch rotor cannot pull).
// With params.thrust_translation_sum_of_squares the (U+V)^2 factor becomes
// (U^2+V^2).
double rotor_thrust(double omega, const QuadState& state, const QuadParams& params);

// Plain sum of the four rotor forces.
double total_thrust(double f1, double f2, double f3, double f4);

// Per-rotor thrusts -> body z force and moments under the chosen axes mode,
// with the fault mask applied. Rotors 1,2 spin clockwise and 3,4
// counter-clockwise, so the reaction yaw moment is
//   N = c_torque * (-F1 - F2 + F3 + F4)
// unless params.yaw_moment_literal selects the unsigned printed sum.
BodyForcesMoments forces_moments(const ControlInput& control, const QuadState& state,
                                 const FaultMask& mask, AxesMode mode,
                                 const QuadParams& params);

// Hover trim: the rotor speed whose rest thrust is exactly a quarter of the
// weight. Returns (omega_trim, f_trim). Throws Unachievable when the rotors
// cannot lift the airframe at omega_max.
struct TrimSolution {
    double omega_trim = 0.0;  // rad/s
    double f_trim = 0.0;      // N per rotor
};
TrimSolution solve_trim(const QuadParams& params);

} // namespace quadftc
