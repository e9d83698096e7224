#include "quadftc/environment.hpp"

#include <algorithm>
#include <cmath>

namespace quadftc {

std::string reward_mode_name(RewardMode m) {
    return m == RewardMode::AltitudeTracking ? "ALT" : "YAW";
}

std::string done_reason_name(DoneReason r) {
    switch (r) {
        case DoneReason::HorizonReached: return "HorizonReached";
        case DoneReason::GroundContact: return "GroundContact";
        case DoneReason::GimbalLock: return "GimbalLock";
        case DoneReason::NonFinite: return "NonFinite";
    }
    return "?";
}

std::array<double, 17> Transition::flatten() const {
    std::array<double, 17> v;
    for (int i = 0; i < 6; ++i) v[i] = obs[i];
    for (int i = 0; i < 4; ++i) v[6 + i] = action[i];
    for (int i = 0; i < 6; ++i) v[10 + i] = next_obs[i];
    v[16] = reward;
    return v;
}

Transition Transition::unflatten(const std::array<double, 17>& v) {
    Transition t;
    for (int i = 0; i < 6; ++i) t.obs[i] = v[i];
    for (int i = 0; i < 4; ++i) t.action[i] = v[6 + i];
    for (int i = 0; i < 6; ++i) t.next_obs[i] = v[10 + i];
    t.reward = v[16];
    return t;
}

std::optional<InitialCondition> InitialCondition::parse(const std::string& name) {
    using K = Kind;
    if (name == "nominal") return named(K::Nominal);
    if (name == "ic1") return named(K::IC1);
    if (name == "ic2") return named(K::IC2);
    if (name == "ic3") return named(K::IC3);
    if (name == "ic4") return named(K::IC4);
    if (name == "ic5") return named(K::IC5);
    return std::nullopt;
}

std::string InitialCondition::name() const {
    switch (kind) {
        case Kind::Nominal: return "nominal";
        case Kind::IC1: return "ic1";
        case Kind::IC2: return "ic2";
        case Kind::IC3: return "ic3";
        case Kind::IC4: return "ic4";
        case Kind::IC5: return "ic5";
        case Kind::Custom: return "custom";
    }
    return "?";
}

RewardMode select_reward_mode(double yaw_rate, RewardMode current, const EnvConfig& cfg) {
    const double mag = std::fabs(yaw_rate);
    if (current == RewardMode::AltitudeTracking) {
        if (mag > cfg.yaw_rate_threshold) return RewardMode::YawArrest;
        return RewardMode::AltitudeTracking;
    }
    if (mag < cfg.hysteresis_ratio * cfg.yaw_rate_threshold)
        return RewardMode::AltitudeTracking;
    return RewardMode::YawArrest;
}

double compute_reward(const QuadState& state, RewardMode mode, const EnvConfig& cfg) {
    if (mode == RewardMode::YawArrest) return -cfg.w_r * std::fabs(state.r);

    const double altitude = -state.zn;
    // Altitude error scored alt_lookahead_s ahead at the current climb rate;
    // the instantaneous error has no first-order action sensitivity over one
    // control period, so a purely positional cost cannot close the loop.
    const double cphi = std::cos(state.phi), cth = std::cos(state.theta);
    const double zn_dot = -state.u * std::sin(state.theta) +
                          state.v * cth * std::sin(state.phi) + state.w * cphi * cth;
    const double predicted = altitude + cfg.alt_lookahead_s * (-zn_dot);
    // The altitude cost carries full weight inside alt_error_cap and a gentle
    // slope beyond it, so attitude recovery outranks altitude during large
    // transients while a distant hover still feels a pull back to the target.
    const double raw_err = std::fabs(cfg.alt_target - predicted);
    const double alt_err = raw_err <= cfg.alt_error_cap
                               ? raw_err
                               : cfg.alt_error_cap +
                                     cfg.alt_error_far_slope * (raw_err - cfg.alt_error_cap);
    const double tilt = std::acos(std::clamp(cphi * cth, -1.0, 1.0));
    return -cfg.w_alt * alt_err - cfg.w_p * std::fabs(state.p) -
           cfg.w_q * std::fabs(state.q) - cfg.w_tilt * tilt;
}

Observation normalize_observation(const QuadState& state, const EnvConfig& cfg) {
    const std::array<double, 6> raw{state.xn, state.yn, state.zn,
                                    state.phi, state.theta, state.psi};
    Observation obs;
    for (int i = 0; i < 6; ++i) {
        const Bound& b = cfg.obs_bounds[i];
        const double t = (raw[i] - b.lo) / (b.hi - b.lo);
        obs[i] = std::clamp(t, 0.0, 1.0);
    }
    return obs;
}

Environment::Environment(const QuadParams& params, const EnvConfig& cfg)
    : params_(params), cfg_(cfg) {
    params_.validate();
    cfg_.validate();
    if (cfg_.failed_rotor >= 1) mask_.failed = cfg_.failed_rotor;
    horizon_steps_ = std::llround(cfg_.episode_horizon / cfg_.dt);
    trim_level_ = solve_trim(params_).omega_trim / params_.omega_max;
}

Observation Environment::reset(const InitialCondition& ic) {
    QuadState s;
    s.zn = -cfg_.failure_altitude;
    using K = InitialCondition::Kind;
    switch (ic.kind) {
        case K::Nominal: break;
        case K::IC1: s.u = 5.0; break;
        case K::IC2: s.v = 5.0; break;
        case K::IC3: s.w = 5.0; break;
        case K::IC4: s.phi = 0.35; break;
        case K::IC5: s.theta = 0.35; break;
        case K::Custom:
            s = ic.custom;
            if (!s.finite() || std::fabs(std::cos(s.theta)) < 1e-6)
                throw InvalidCustomState();
            break;
    }
    state_ = s;
    mode_ = RewardMode::AltitudeTracking;
    steps_ = 0;
    done_ = false;
    reason_.reset();
    return normalize_observation(state_, cfg_);
}

StepResult Environment::step(const Action& action) {
    if (done_) throw EpisodeFinished();

    ControlInput control;
    for (int i = 0; i < 4; ++i)
        control.omega[i] = std::clamp(action[i], 0.0, 1.0) * params_.omega_max;

    StepResult result;
    try {
        state_ = integrate_step(state_, control, mask_, cfg_.axes, params_, cfg_.dt);
    } catch (const GimbalLock&) {
        done_ = true;
        reason_ = DoneReason::GimbalLock;
    } catch (const NonFiniteInput&) {
        done_ = true;
        reason_ = DoneReason::NonFinite;
    }

    if (!done_ && !state_.finite()) {
        done_ = true;
        reason_ = DoneReason::NonFinite;
    }

    if (!done_) {
        steps_ += 1;
        mode_ = select_reward_mode(state_.r, mode_, cfg_);
        result.reward = compute_reward(state_, mode_, cfg_);
        if (state_.zn >= 0.0) {
            done_ = true;
            reason_ = DoneReason::GroundContact;
        } else if (steps_ >= horizon_steps_) {
            done_ = true;
            reason_ = DoneReason::HorizonReached;
        }
    } else {
        // Integration failed: the state could not advance; score the last
        // valid state under the current mode so the record stays finite.
        result.reward = compute_reward(state_, mode_, cfg_);
    }

    result.obs = normalize_observation(state_, cfg_);
    result.done = done_;
    result.reason = reason_;
    result.state = state_;
    return result;
}

} // namespace quadftc
