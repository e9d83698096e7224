#pragma once
#include <optional>
#include <vector>

#include "quadftc/environment.hpp"
#include "quadftc/trajectory.hpp"

namespace quadftc {

// Discretized normalized command levels for the live rotors; the failed
// rotor is excluded from the grid and its slot is pinned to 0.
struct ActionGrid {
    std::vector<double> levels{0.0, 0.25, 0.5, 0.75, 1.0};
    int lookahead_depth = 1;

    void validate() const;
};

// One-step lookahead over the action grid: every candidate is rolled through
// the plant for one dt and scored with
//   reward(successor, mode) + gamma * reward(successor, mode) / (1 - gamma),
// the constant-reward bootstrap of the successor value (deeper expansion via
// lookahead_depth). Candidates whose successor is immediately terminal
// (ground, gimbal, non-finite) are skipped. Ties break toward the lowest
// total commanded speed, then lexicographic level order. Returns nullopt
// when every candidate crashes.
std::optional<Action> greedy_action(const QuadState& state, RewardMode mode,
                                    const ActionGrid& grid, const EnvConfig& cfg,
                                    const QuadParams& params);

// Roll a full episode under the greedy policy. max_time overrides the
// config's episode horizon. Deterministic.
EpisodeResult run_episode(const InitialCondition& ic, const ActionGrid& grid,
                          const EnvConfig& cfg, const QuadParams& params, double max_time);

} // namespace quadftc
