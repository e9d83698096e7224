#include "quadftc/harness.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace quadftc {

namespace {

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

} // namespace

void write_manifest(const RunConfig& cfg, const std::string& command) {
    const auto dir = ensure_out_dir(cfg);
    write_text(dir / "config_effective.cfg", cfg.serialize());
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(cfg.config_hash()));
    std::string manifest;
    manifest += "version = " + std::string(kVersion) + "\n";
    manifest += "command = " + command + "\n";
    manifest += "label = " + cfg.label + "\n";
    manifest += "seed = " + std::to_string(cfg.seed) + "\n";
    manifest += "config_hash = " + std::string(hash) + "\n";
    manifest += "config_file = config_effective.cfg\n";
    write_text(dir / "manifest.txt", manifest);
}

TrimReport cmd_trim(const RunConfig& cfg, std::ostream& out) {
    const TrimSolution trim = solve_trim(cfg.quad);
    QuadState rest;
    const double back = rotor_thrust(trim.omega_trim, rest, cfg.quad);
    TrimReport report;
    report.omega_trim = trim.omega_trim;
    report.f_trim = trim.f_trim;
    report.residual = std::fabs(back - trim.f_trim) / trim.f_trim;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "omega_trim=%.9g rad/s  f_trim=%.9g N  residual=%.3g  trim_fraction=%.4g\n",
                  report.omega_trim, report.f_trim, report.residual,
                  report.omega_trim / cfg.quad.omega_max);
    out << buf;
    return report;
}

EpisodeResult run_controller_episode(const RunConfig& cfg, ControllerKind controller,
                                     const DenseNetwork* actor, const InitialCondition& ic,
                                     double duration) {
    const double max_time = duration > 0.0 ? duration : cfg.env.episode_horizon;
    if (controller == ControllerKind::Dp)
        return run_episode(ic, cfg.dp, cfg.env, cfg.quad, max_time);

    EnvConfig env_cfg = cfg.env;
    env_cfg.episode_horizon = max_time;
    Environment env(cfg.quad, env_cfg);

    if (controller == ControllerKind::Ddpg) {
        if (!actor) throw std::runtime_error("ddpg controller requires a checkpoint");
        return evaluate_actor(*actor, env, ic);
    }

    // controller == None: hold the live rotors at the trim command.
    Action trim_action{};
    for (int i = 0; i < 4; ++i)
        trim_action[i] = env.fault().is_failed(i + 1) ? 0.0 : env.trim_level();

    EpisodeResult result;
    env.reset(ic);
    SummaryAccumulator acc(env.state());
    while (!env.done()) {
        const StepResult sr = env.step(trim_action);
        TrajectoryRow row;
        row.t = env.time();
        row.state = sr.state;
        for (int i = 0; i < 4; ++i)
            row.omega[i] = trim_action[i] * cfg.quad.omega_max;
        row.reward = sr.reward;
        row.mode = env.mode();
        result.trajectory.push_back(row);
        acc.add(sr.state, sr.reward, env.mode());
    }
    result.summary = acc.finish(env.time(), env.done_reason());
    return result;
}

EpisodeResult cmd_simulate(const RunConfig& cfg, const SimulateOptions& opts,
                           std::ostream& out) {
    DenseNetwork actor;
    const DenseNetwork* actor_ptr = nullptr;
    if (opts.controller == ControllerKind::Ddpg) {
        actor = load_network(opts.checkpoint_path);
        actor_ptr = &actor;
    }
    const EpisodeResult result =
        run_controller_episode(cfg, opts.controller, actor_ptr, opts.ic, opts.duration);

    const auto dir = ensure_out_dir(cfg);
    write_trajectory_csv(result, (dir / "trajectory.csv").string());
    write_manifest(cfg, "simulate");
    out << "ic=" << opts.ic.name() << " " << result.summary.to_key_value() << "\n";
    return result;
}

TrainResult cmd_train(const RunConfig& cfg, std::ostream& out) {
    EnvConfig env_cfg = cfg.env;
    env_cfg.episode_horizon = cfg.ddpg.train_horizon_s;
    Environment env(cfg.quad, env_cfg);

    SplitMix64 rng(cfg.seed);
    const auto dir = ensure_out_dir(cfg);

    std::ofstream curve_file(dir / "learning_curve.csv");
    if (!curve_file) throw std::runtime_error("cannot open learning_curve.csv");
    curve_file << learning_curve_csv_header() << "\n";

    long next_report = 0;
    const TrainResult result = train(env, cfg.ddpg, rng, [&](const LearningCurvePoint& p) {
        curve_file << learning_curve_csv_row(p) << "\n";
        if (p.episode >= next_report) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "episode %ld  score %.1f  steps %ld  sigma %.3f\n",
                          p.episode, p.score, p.steps, p.noise_sigma);
            out << buf;
            next_report += 100;
        }
    });
    curve_file.close();
    if (!curve_file) throw std::runtime_error("write failed: learning_curve.csv");

    if (cfg.ddpg.episodes > 0) {
        save_network(result.best_actor, (dir / "best_actor.net").string());
        save_network(result.final_actor, (dir / "final_actor.net").string());
        save_network(result.final_critic, (dir / "final_critic.net").string());
        char buf[160];
        std::snprintf(buf, sizeof buf, "best episode %ld  best score %.1f\n",
                      result.best_episode, result.best_score);
        out << buf;
    }
    write_manifest(cfg, "train");
    return result;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg, ControllerKind controller,
                                const std::string& checkpoint_path, double duration,
                                std::ostream& out) {
    DenseNetwork actor;
    const DenseNetwork* actor_ptr = nullptr;
    if (controller == ControllerKind::Ddpg) {
        actor = load_network(checkpoint_path);
        actor_ptr = &actor;
    }

    std::vector<SweepRow> rows;
    const auto dir = ensure_out_dir(cfg);
    std::ofstream csv(dir / "sweep.csv");
    if (!csv) throw std::runtime_error("cannot open sweep.csv");
    csv << "ic,xmin,xmax,ymin,ymax,zmin,zmax,hover_time,reason\n";

    for (const std::string& name : cfg.sweep_ics) {
        const auto ic = InitialCondition::parse(name);
        if (!ic) continue;  // validated at parse time; defensive for direct calls
        SweepRow row;
        row.ic = name;
        try {
            row.summary =
                run_controller_episode(cfg, controller, actor_ptr, *ic, duration).summary;
        } catch (const std::exception& e) {
            out << "ic=" << name << " failed: " << e.what() << "\n";
            continue;
        }
        char buf[384];
        const EpisodeSummary& s = row.summary;
        std::snprintf(buf, sizeof buf, "%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%s\n",
                      name.c_str(), s.x_min, s.x_max, s.y_min, s.y_max, s.alt_min, s.alt_max,
                      s.hover_time, s.reason_label().c_str());
        csv << buf;
        out << "ic=" << name << " " << s.to_key_value() << "\n";
        rows.push_back(row);
    }
    csv.close();
    if (!csv) throw std::runtime_error("write failed: sweep.csv");
    write_manifest(cfg, "sweep");
    return rows;
}

} // namespace quadftc
