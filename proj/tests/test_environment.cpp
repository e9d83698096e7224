#include <doctest.h>

#include <cmath>

#include "quadftc/environment.hpp"
#include "quadftc/rng.hpp"

using namespace quadftc;

namespace {

InitialCondition nominal() { return InitialCondition::named(InitialCondition::Kind::Nominal); }

Action uniform_action(double level) { return {level, level, level, level}; }

} // namespace

TEST_CASE("reset places the plant at the failure altitude") {
    QuadParams p;
    EnvConfig cfg;
    Environment env(p, cfg);
    const Observation obs = env.reset(nominal());
    // zn = -100 under bounds [-120, 0]
    CHECK(obs[2] == doctest::Approx((-100.0 + 120.0) / 120.0).epsilon(1e-12));
    CHECK(env.state().zn == -100.0);
    CHECK(env.mode() == RewardMode::AltitudeTracking);
}

TEST_CASE("named initial conditions perturb exactly one state") {
    QuadParams p;
    EnvConfig cfg;
    Environment env(p, cfg);
    env.reset(InitialCondition::named(InitialCondition::Kind::IC3));
    CHECK(env.state().w == 5.0);
    CHECK(env.state().u == 0.0);
    CHECK(env.state().phi == 0.0);
    env.reset(InitialCondition::named(InitialCondition::Kind::IC4));
    CHECK(env.state().phi == 0.35);
    CHECK(env.state().w == 0.0);
    env.reset(InitialCondition::named(InitialCondition::Kind::IC1));
    CHECK(env.state().u == 5.0);
    env.reset(InitialCondition::named(InitialCondition::Kind::IC2));
    CHECK(env.state().v == 5.0);
    env.reset(InitialCondition::named(InitialCondition::Kind::IC5));
    CHECK(env.state().theta == 0.35);
}

TEST_CASE("custom initial state is validated") {
    QuadParams p;
    EnvConfig cfg;
    Environment env(p, cfg);
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::Custom;
    ic.custom.zn = -50.0;
    ic.custom.theta = std::acos(0.5e-6);
    CHECK_THROWS_AS(env.reset(ic), InvalidCustomState);
    ic.custom.theta = 0.2;
    CHECK_NOTHROW(env.reset(ic));
    CHECK(env.state().zn == -50.0);
}

TEST_CASE("trim action on an unfaulted plant holds altitude over one step") {
    QuadParams p;
    EnvConfig cfg;
    cfg.failed_rotor = 0;
    Environment env(p, cfg);
    env.reset(nominal());
    const auto r = env.step(uniform_action(env.trim_level()));
    CHECK(std::fabs(-r.state.zn - 100.0) < 1e-6);
}

TEST_CASE("zero action free-falls to ground contact at the ballistic time") {
    QuadParams p;
    EnvConfig cfg;
    Environment env(p, cfg);
    env.reset(nominal());
    StepResult last;
    while (!env.done()) last = env.step(uniform_action(0.0));
    REQUIRE(last.reason.has_value());
    CHECK(*last.reason == DoneReason::GroundContact);
    const double expected = std::sqrt(2.0 * 100.0 / 9.81);
    CHECK(std::fabs(env.time() - expected) <= 2.0 * cfg.dt + 1e-12);
}

TEST_CASE("stepping a finished episode raises") {
    QuadParams p;
    EnvConfig cfg;
    Environment env(p, cfg);
    env.reset(nominal());
    while (!env.done()) env.step(uniform_action(0.0));
    CHECK_THROWS_AS(env.step(uniform_action(0.0)), EpisodeFinished);
}

TEST_CASE("horizon termination") {
    QuadParams p;
    EnvConfig cfg;
    cfg.failed_rotor = 0;
    cfg.episode_horizon = 0.05;
    Environment env(p, cfg);
    env.reset(nominal());
    StepResult last;
    int steps = 0;
    while (!env.done()) {
        last = env.step(uniform_action(env.trim_level()));
        ++steps;
    }
    CHECK(steps == 5);
    CHECK(*last.reason == DoneReason::HorizonReached);
}

TEST_CASE("reward mode switching follows the threshold with hysteresis") {
    EnvConfig cfg;  // threshold 10

    SUBCASE("spec examples at 0.5 hysteresis") {
        cfg.hysteresis_ratio = 0.5;
        CHECK(select_reward_mode(12.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::YawArrest);
        CHECK(select_reward_mode(4.0, RewardMode::YawArrest, cfg) ==
              RewardMode::AltitudeTracking);
        CHECK(select_reward_mode(9.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::AltitudeTracking);
        // inside the hysteresis band the mode is sticky
        CHECK(select_reward_mode(7.0, RewardMode::YawArrest, cfg) == RewardMode::YawArrest);
        CHECK(select_reward_mode(7.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::AltitudeTracking);
    }

    SUBCASE("same examples hold at the default hysteresis") {
        CHECK(select_reward_mode(12.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::YawArrest);
        CHECK(select_reward_mode(4.0, RewardMode::YawArrest, cfg) ==
              RewardMode::AltitudeTracking);
        CHECK(select_reward_mode(9.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::AltitudeTracking);
    }

    SUBCASE("negative yaw rates use the magnitude") {
        CHECK(select_reward_mode(-12.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::YawArrest);
        CHECK(select_reward_mode(-4.0, RewardMode::YawArrest, cfg) ==
              RewardMode::AltitudeTracking);
    }

    SUBCASE("exactly at the threshold does not switch") {
        CHECK(select_reward_mode(10.0, RewardMode::AltitudeTracking, cfg) ==
              RewardMode::AltitudeTracking);
    }
}

TEST_CASE("mode never chatters when the per-step change is below the band") {
    EnvConfig cfg;
    cfg.hysteresis_ratio = 0.5;
    // |r| changes by less than (1 - ratio)*threshold = 5 per step.
    SplitMix64 rng(8);
    double r = 0.0;
    RewardMode mode = RewardMode::AltitudeTracking;
    RewardMode prev = mode;
    int flips_in_a_row = 0;
    for (int i = 0; i < 20000; ++i) {
        r += rng.uniform(-4.9, 4.9);
        r = std::clamp(r, -20.0, 20.0);
        const RewardMode next = select_reward_mode(r, mode, cfg);
        if (next != mode && mode != prev)
            ++flips_in_a_row;  // switched on consecutive steps
        prev = mode;
        mode = next;
    }
    CHECK(flips_in_a_row == 0);
}

TEST_CASE("reward examples") {
    EnvConfig cfg;
    QuadState s;
    s.zn = -100.0;
    CHECK(compute_reward(s, RewardMode::AltitudeTracking, cfg) == 0.0);

    QuadState yaw;
    yaw.r = 10.0;
    CHECK(compute_reward(yaw, RewardMode::YawArrest, cfg) == -10.0);

    QuadState off;
    off.zn = -95.0;
    off.p = 0.2;
    CHECK(compute_reward(off, RewardMode::AltitudeTracking, cfg) ==
          doctest::Approx(-5.1).epsilon(1e-12));
}

TEST_CASE("reward is nonpositive and zero only at the target") {
    EnvConfig cfg;
    SplitMix64 rng(31);
    for (int i = 0; i < 2000; ++i) {
        QuadState s;
        s.zn = rng.uniform(-120, 0);
        s.p = rng.uniform(-5, 5);
        s.q = rng.uniform(-5, 5);
        s.r = rng.uniform(-15, 15);
        s.phi = rng.uniform(-1, 1);
        s.theta = rng.uniform(-1, 1);
        const double r_alt = compute_reward(s, RewardMode::AltitudeTracking, cfg);
        const double r_yaw = compute_reward(s, RewardMode::YawArrest, cfg);
        CHECK(r_alt <= 0.0);
        CHECK(r_yaw <= 0.0);
        if (r_yaw == 0.0) CHECK(s.r == 0.0);
        if (r_alt == 0.0) {
            CHECK(s.zn == doctest::Approx(-cfg.alt_target));
            CHECK(s.p == 0.0);
            CHECK(s.q == 0.0);
        }
    }
    QuadState target;
    target.zn = -cfg.alt_target;
    CHECK(compute_reward(target, RewardMode::AltitudeTracking, cfg) == 0.0);
    CHECK(compute_reward(target, RewardMode::YawArrest, cfg) == 0.0);
}

TEST_CASE("altitude reward anticipates the climb rate") {
    EnvConfig cfg;  // lookahead 2 s
    QuadState sinking;
    sinking.zn = -100.0;
    sinking.w = 5.0;  // descending at 5 m/s
    // predicted altitude = 100 - 2*5 = 90 -> capped error 10
    CHECK(compute_reward(sinking, RewardMode::AltitudeTracking, cfg) ==
          doctest::Approx(-10.0).epsilon(1e-12));
}

TEST_CASE("normalization endpoints, midpoint, and clamp") {
    EnvConfig cfg;
    QuadState s;
    s.zn = -120.0;
    CHECK(normalize_observation(s, cfg)[2] == 0.0);
    s.zn = 0.0;
    CHECK(normalize_observation(s, cfg)[2] == 1.0);
    s.zn = -60.0;
    CHECK(normalize_observation(s, cfg)[2] == 0.5);
    s.xn = 1000.0;
    CHECK(normalize_observation(s, cfg)[0] == 1.0);
    s.xn = -1000.0;
    CHECK(normalize_observation(s, cfg)[0] == 0.0);
}

TEST_CASE("transition record is exactly 17 scalars and round-trips") {
    Transition t;
    for (int i = 0; i < 6; ++i) t.obs[i] = 0.1 * i;
    t.action = {0.5, 0.25, 0.75, 0.0};
    for (int i = 0; i < 6; ++i) t.next_obs[i] = 0.05 * i + 0.01;
    t.reward = -3.25;
    const auto flat = t.flatten();
    static_assert(flat.size() == 17);
    const Transition back = Transition::unflatten(flat);
    CHECK(back.obs == t.obs);
    CHECK(back.action == t.action);
    CHECK(back.next_obs == t.next_obs);
    CHECK(back.reward == t.reward);
}

TEST_CASE("trajectories are deterministic and invariant to the failed slot") {
    QuadParams p;
    EnvConfig cfg;
    Environment a(p, cfg), b(p, cfg);
    a.reset(nominal());
    b.reset(nominal());
    SplitMix64 rng(55);
    for (int i = 0; i < 400 && !a.done(); ++i) {
        Action act;
        for (auto& v : act) v = rng.uniform01();
        Action act_b = act;
        act_b[3] = rng.uniform01();  // failed rotor slot differs
        const auto ra = a.step(act);
        const auto rb = b.step(act_b);
        const auto xa = ra.state.as_array(), xb = rb.state.as_array();
        for (int k = 0; k < 12; ++k) CHECK(xa[k] == xb[k]);
        CHECK(ra.reward == rb.reward);
        if (ra.done) break;
    }
}

TEST_CASE("uncontrolled fault diverges in yaw and reaches the ground") {
    QuadParams p;
    EnvConfig cfg;
    Environment env(p, cfg);
    env.reset(nominal());
    Action trim_live;
    for (int i = 0; i < 4; ++i)
        trim_live[i] = env.fault().is_failed(i + 1) ? 0.0 : env.trim_level();
    bool crossed = false;
    StepResult last;
    while (!env.done()) {
        last = env.step(trim_live);
        if (std::fabs(last.state.r) > cfg.yaw_rate_threshold) crossed = true;
    }
    CHECK(crossed);
    REQUIRE(last.reason.has_value());
    CHECK(*last.reason == DoneReason::GroundContact);
    CHECK(env.time() < cfg.episode_horizon);
}
