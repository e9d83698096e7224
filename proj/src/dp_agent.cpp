#include "quadftc/dp_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quadftc {

void ActionGrid::validate() const {
    if (levels.empty()) throw std::invalid_argument("dp.levels must not be empty");
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw std::invalid_argument("dp.levels must be sorted ascending");
    for (double l : levels)
        if (!(l >= 0.0 && l <= 1.0))
            throw std::invalid_argument("dp.levels must lie in [0,1]");
    if (lookahead_depth < 1) throw std::invalid_argument("dp.lookahead_depth must be >= 1");
}

namespace {

struct Candidate {
    Action action;
    double total_level;
};

// All level combinations over the live rotors, lexicographic in rotor order.
std::vector<Candidate> enumerate_actions(const ActionGrid& grid, const FaultMask& mask) {
    std::vector<int> live;
    for (int i = 0; i < 4; ++i)
        if (!mask.is_failed(i + 1)) live.push_back(i);

    std::vector<Candidate> out;
    const std::size_t n = grid.levels.size();
    std::vector<std::size_t> idx(live.size(), 0);
    while (true) {
        Candidate c;
        c.action = {0.0, 0.0, 0.0, 0.0};
        c.total_level = 0.0;
        for (std::size_t k = 0; k < live.size(); ++k) {
            c.action[live[k]] = grid.levels[idx[k]];
            c.total_level += grid.levels[idx[k]];
        }
        out.push_back(c);
        if (live.empty()) return out;
        std::size_t k = live.size();
        while (true) {
            --k;
            if (++idx[k] < n) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
    }
}

bool terminal_successor(const QuadState& s) { return !s.finite() || s.zn >= 0.0; }

constexpr double kCrashScore = -std::numeric_limits<double>::infinity();

double lookahead_score(const QuadState& state, RewardMode mode, int depth,
                       const std::vector<Candidate>& candidates, const FaultMask& mask,
                       const EnvConfig& cfg, const QuadParams& params);

// Score of taking `action` in `state`: reward of the successor plus the
// discounted bootstrap (or deeper expansion) of the successor value.
double action_score(const QuadState& state, const Action& action, RewardMode mode, int depth,
                    const std::vector<Candidate>& candidates, const FaultMask& mask,
                    const EnvConfig& cfg, const QuadParams& params) {
    ControlInput control;
    for (int i = 0; i < 4; ++i) control.omega[i] = action[i] * params.omega_max;
    QuadState next;
    try {
        next = integrate_step(state, control, mask, cfg.axes, params, cfg.dt);
    } catch (const GimbalLock&) {
        return kCrashScore;
    } catch (const NonFiniteInput&) {
        return kCrashScore;
    }
    if (terminal_successor(next)) return kCrashScore;

    const double r = compute_reward(next, mode, cfg);
    double value;
    if (depth <= 1) {
        value = r / (1.0 - cfg.gamma);  // constant-reward bootstrap
    } else {
        value = lookahead_score(next, mode, depth - 1, candidates, mask, cfg, params);
        if (value == kCrashScore) return kCrashScore;
    }
    return r + cfg.gamma * value;
}

double lookahead_score(const QuadState& state, RewardMode mode, int depth,
                       const std::vector<Candidate>& candidates, const FaultMask& mask,
                       const EnvConfig& cfg, const QuadParams& params) {
    double best = kCrashScore;
    for (const auto& c : candidates) {
        const double s = action_score(state, c.action, mode, depth, candidates, mask, cfg, params);
        if (s > best) best = s;
    }
    return best;
}

} // namespace

std::optional<Action> greedy_action(const QuadState& state, RewardMode mode,
                                    const ActionGrid& grid, const EnvConfig& cfg,
                                    const QuadParams& params) {
    grid.validate();
    FaultMask mask;
    if (cfg.failed_rotor >= 1) mask.failed = cfg.failed_rotor;
    const auto candidates = enumerate_actions(grid, mask);

    std::optional<Action> best;
    double best_score = kCrashScore;
    double best_total = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        const double score =
            action_score(state, c.action, mode, grid.lookahead_depth, candidates, mask, cfg, params);
        if (score == kCrashScore) continue;
        // Strictly better score wins; equal scores fall back to the lowest
        // total command; the lexicographic enumeration order settles the rest
        // (first seen is kept).
        if (!best || score > best_score ||
            (score == best_score && c.total_level < best_total)) {
            best = c.action;
            best_score = score;
            best_total = c.total_level;
        }
    }
    return best;
}

EpisodeResult run_episode(const InitialCondition& ic, const ActionGrid& grid,
                          const EnvConfig& cfg, const QuadParams& params, double max_time) {
    EnvConfig episode_cfg = cfg;
    episode_cfg.episode_horizon = std::max(max_time, cfg.dt);

    Environment env(params, episode_cfg);
    env.reset(ic);

    EpisodeResult result;
    SummaryAccumulator acc(env.state());

    if (max_time <= 0.0) return result;

    while (!env.done()) {
        const auto action = greedy_action(env.state(), env.mode(), grid, episode_cfg, params);
        if (!action) break;  // every grid action crashes; end the episode here

        const StepResult sr = env.step(*action);

        TrajectoryRow row;
        row.t = env.time();
        row.state = sr.state;
        for (int i = 0; i < 4; ++i)
            row.omega[i] =
                env.fault().is_failed(i + 1) ? 0.0 : (*action)[i] * params.omega_max;
        row.reward = sr.reward;
        row.mode = env.mode();
        result.trajectory.push_back(row);
        acc.add(sr.state, sr.reward, env.mode());
    }
    result.summary = acc.finish(env.time(), env.done_reason());
    return result;
}

} // namespace quadftc
