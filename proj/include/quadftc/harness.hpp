#pragma once
#include <iosfwd>
#include <string>

#include "quadftc/config.hpp"
#include "quadftc/ddpg_agent.hpp"
#include "quadftc/dp_agent.hpp"

namespace quadftc {

inline constexpr const char* kVersion = "1.0.0";

enum class ControllerKind { None, Dp, Ddpg };

struct SimulateOptions {
    InitialCondition ic = InitialCondition::named(InitialCondition::Kind::Nominal);
    ControllerKind controller = ControllerKind::None;
    std::string checkpoint_path;  // for ControllerKind::Ddpg
    double duration = -1.0;       // <= 0: use env.episode_horizon
};

struct TrimReport {
    double omega_trim = 0.0;
    double f_trim = 0.0;
    double residual = 0.0;  // relative round-trip error through rotor_thrust
};

TrimReport cmd_trim(const RunConfig& cfg, std::ostream& out);

// One episode under the chosen controller; writes <out_dir>/trajectory.csv
// and the manifest, prints the summary line.
EpisodeResult cmd_simulate(const RunConfig& cfg, const SimulateOptions& opts,
                           std::ostream& out);

// Full training run; writes learning_curve.csv, best/final checkpoints and
// the manifest.
TrainResult cmd_train(const RunConfig& cfg, std::ostream& out);

struct SweepRow {
    std::string ic;
    EpisodeSummary summary;
};

// One episode per configured IC; writes <out_dir>/sweep.csv. Per-row
// failures are recorded and the sweep continues.
std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, ControllerKind controller,
                                const std::string& checkpoint_path, double duration,
                                std::ostream& out);

// Episode under a frozen policy, shared by simulate/sweep.
EpisodeResult run_controller_episode(const RunConfig& cfg, ControllerKind controller,
                                     const DenseNetwork* actor, const InitialCondition& ic,
                                     double duration);

void write_manifest(const RunConfig& cfg, const std::string& command);

} // namespace quadftc
