#pragma once
#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "quadftc/flight_dynamics.hpp"
#include "quadftc/propulsion.hpp"
#include "quadftc/quad_state.hpp"

namespace quadftc {

// Which reward objective is active. The controller tracks altitude until the
// yaw rate runs away, then switches to arresting it.
enum class RewardMode { AltitudeTracking, YawArrest };

// Why an episode ended.
enum class DoneReason { HorizonReached, GroundContact, GimbalLock, NonFinite };

std::string reward_mode_name(RewardMode m);   // "ALT" / "YAW"
std::string done_reason_name(DoneReason r);

// Per-component affine normalization range.
struct Bound {
    double lo = 0.0;
    double hi = 1.0;
};

struct EnvConfig {
    double dt = 0.01;                  // s
    double episode_horizon = 170.0;    // s
    double failure_altitude = 100.0;   // m above ground at reset
    int failed_rotor = 4;              // 1..4, or 0 for no fault
    double yaw_rate_threshold = 10.0;  // rad/s, switch to YawArrest above
    double hysteresis_ratio = 0.9;     // switch back below ratio*threshold
    double gamma = 0.99;
    AxesMode axes = AxesMode::Transformed;

    // Reward weights. The altitude error is evaluated alt_lookahead_s seconds
    // ahead at the current climb rate; 0 scores the instantaneous altitude.
    // w_tilt prices the total tilt angle acos(cos(phi)*cos(theta)).
    double w_alt = 1.0;        // per metre
    double w_p = 0.5;          // per rad/s
    double w_q = 0.5;          // per rad/s
    double w_r = 1.0;          // per rad/s
    double w_tilt = 40.0;      // per rad
    double alt_target = 100.0; // m
    double alt_lookahead_s = 2.0;
    double alt_error_cap = 15.0;        // m; full-weight region of the altitude cost
    double alt_error_far_slope = 0.0;   // optional weight per metre beyond the cap

    // Observation normalization bounds: xn, yn, zn, phi, theta, psi.
    std::array<Bound, 6> obs_bounds{
        Bound{-50.0, 50.0}, Bound{-50.0, 50.0}, Bound{-120.0, 0.0},
        Bound{-1.5707963267948966, 1.5707963267948966},
        Bound{-1.5707963267948966, 1.5707963267948966},
        Bound{-25.132741228718345, 25.132741228718345}};

    void validate() const {
        if (!(dt > 0)) throw std::invalid_argument("env.dt must be > 0");
        if (!(episode_horizon > 0)) throw std::invalid_argument("env.horizon must be > 0");
        if (!(yaw_rate_threshold > 0)) throw std::invalid_argument("env.yaw_rate_threshold must be > 0");
        if (!(gamma > 0 && gamma <= 1)) throw std::invalid_argument("env.gamma must be in (0,1]");
        if (!(hysteresis_ratio > 0 && hysteresis_ratio <= 1))
            throw std::invalid_argument("env.hysteresis_ratio must be in (0,1]");
        if (failed_rotor < 0 || failed_rotor > 4)
            throw std::invalid_argument("env.failed_rotor must be 0..4");
    }
};

// Six pose components normalized to [0,1]: xn, yn, zn, phi, theta, psi.
using Observation = std::array<double, 6>;

// Normalized action: one command per rotor in [0,1]; omega_i = a_i*omega_max.
using Action = std::array<double, 4>;

// One replay record: obs(6) + action(4) + next_obs(6) + reward = 17 scalars.
struct Transition {
    Observation obs{};
    Action action{};
    Observation next_obs{};
    double reward = 0.0;

    std::array<double, 17> flatten() const;
    static Transition unflatten(const std::array<double, 17>& v);
};

struct StepResult {
    Observation obs{};
    double reward = 0.0;
    bool done = false;
    std::optional<DoneReason> reason;
    QuadState state;  // full unnormalized plant state, for logging
};

// Named initial conditions from the robustness table, plus Custom.
struct InitialCondition {
    enum class Kind { Nominal, IC1, IC2, IC3, IC4, IC5, Custom };
    Kind kind = Kind::Nominal;
    QuadState custom;

    static InitialCondition named(Kind k) { return InitialCondition{k, QuadState{}}; }
    static std::optional<InitialCondition> parse(const std::string& name);
    std::string name() const;
};

struct EpisodeFinished : std::runtime_error {
    EpisodeFinished() : std::runtime_error("step() called on a finished episode") {}
};
struct InvalidCustomState : std::runtime_error {
    InvalidCustomState() : std::runtime_error("custom initial state violates invariants") {}
};

RewardMode select_reward_mode(double yaw_rate, RewardMode current, const EnvConfig& cfg);
double compute_reward(const QuadState& state, RewardMode mode, const EnvConfig& cfg);
Observation normalize_observation(const QuadState& state, const EnvConfig& cfg);

// Episodic environment over the faulted plant. One instance is
// single-threaded; run independent instances for parallel episodes.
class Environment {
public:
    Environment(const QuadParams& params, const EnvConfig& cfg);

    Observation reset(const InitialCondition& ic);
    StepResult step(const Action& action);

    const QuadState& state() const { return state_; }
    RewardMode mode() const { return mode_; }
    double time() const { return static_cast<double>(steps_) * cfg_.dt; }
    long steps() const { return steps_; }
    bool done() const { return done_; }
    std::optional<DoneReason> done_reason() const { return reason_; }
    const EnvConfig& config() const { return cfg_; }
    const QuadParams& params() const { return params_; }
    const FaultMask& fault() const { return mask_; }
    double trim_level() const { return trim_level_; }  // normalized trim command

private:
    QuadParams params_;
    EnvConfig cfg_;
    FaultMask mask_;
    QuadState state_;
    RewardMode mode_ = RewardMode::AltitudeTracking;
    long steps_ = 0;
    long horizon_steps_ = 0;
    bool done_ = false;
    std::optional<DoneReason> reason_;
    double trim_level_ = 0.0;
};

} // namespace quadftc
