// quadftc: fault-tolerant quadcopter control experiments.
//
//   quadftc trim     --config PATH
//   quadftc simulate --config PATH [--ic NAME] [--controller none|dp|ddpg:PATH]
//                    [--duration SECONDS] [--seed N] [--out DIR]
//   quadftc train    --config PATH [--seed N] [--out DIR] [--horizon SECONDS]
//   quadftc sweep    --config PATH [--controller ...] [--duration SECONDS]
//                    [--seed N] [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quadftc/harness.hpp"

namespace {

struct ControllerSpec {
    quadftc::ControllerKind kind = quadftc::ControllerKind::None;
    std::string checkpoint;
};

ControllerSpec parse_controller(const std::string& text) {
    if (text == "none") return {quadftc::ControllerKind::None, ""};
    if (text == "dp") return {quadftc::ControllerKind::Dp, ""};
    if (text.rfind("ddpg:", 0) == 0)
        return {quadftc::ControllerKind::Ddpg, text.substr(5)};
    throw quadftc::ConfigError("controller must be none, dp, or ddpg:PATH");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadcopter rotor-failure control experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::string ic_name = "nominal";
    std::string controller_text = "none";
    double duration = -1.0;
    std::optional<double> horizon;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value)")->required();
        cmd->add_option("--seed", seed, "override run.seed");
        cmd->add_option("--out", out_dir, "override run.out_dir");
    };

    CLI::App* trim = app.add_subcommand("trim", "solve and print the hover trim");
    add_common(trim);

    CLI::App* simulate = app.add_subcommand("simulate", "run one episode and log it");
    add_common(simulate);
    simulate->add_option("--ic", ic_name, "initial condition: nominal|ic1..ic5");
    simulate->add_option("--controller", controller_text, "none|dp|ddpg:PATH");
    simulate->add_option("--duration", duration, "episode length, s");

    CLI::App* train_cmd = app.add_subcommand("train", "train the DDPG controller");
    add_common(train_cmd);
    train_cmd->add_option("--horizon", horizon, "training episode length, s");

    CLI::App* sweep = app.add_subcommand("sweep", "run the initial-condition sweep");
    add_common(sweep);
    sweep->add_option("--controller", controller_text, "none|dp|ddpg:PATH");
    sweep->add_option("--duration", duration, "episode length per IC, s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    quadftc::RunConfig cfg;
    try {
        cfg = quadftc::RunConfig::load_file(config_path);
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (horizon) {
            if (*horizon <= 0) throw quadftc::ConfigError("--horizon must be > 0");
            cfg.ddpg.train_horizon_s = *horizon;
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (trim->parsed()) {
            quadftc::cmd_trim(cfg, std::cout);
        } else if (simulate->parsed()) {
            const auto ic = quadftc::InitialCondition::parse(ic_name);
            if (!ic) {
                std::cerr << "config error: unknown --ic '" << ic_name << "'\n";
                return 2;
            }
            ControllerSpec spec;
            try {
                spec = parse_controller(controller_text);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
            quadftc::SimulateOptions opts;
            opts.ic = *ic;
            opts.controller = spec.kind;
            opts.checkpoint_path = spec.checkpoint;
            opts.duration = duration;
            quadftc::cmd_simulate(cfg, opts, std::cout);
        } else if (train_cmd->parsed()) {
            quadftc::cmd_train(cfg, std::cout);
        } else if (sweep->parsed()) {
            ControllerSpec spec;
            try {
                spec = parse_controller(controller_text);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
            quadftc::cmd_sweep(cfg, spec.kind, spec.checkpoint, duration, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
