#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadftc/environment.hpp"

namespace quadftc {

struct TrajectoryRow {
    double t = 0.0;
    QuadState state;
    std::array<double, 4> omega{};  // applied rotor speeds, rad/s
    double reward = 0.0;
    RewardMode mode = RewardMode::AltitudeTracking;
};

struct EpisodeSummary {
    double hover_time = 0.0;              // s survived
    double alt_min = 0.0, alt_max = 0.0;  // m above ground
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double yaw_rate_peak = 0.0;  // rad/s
    long mode_switches = 0;
    double total_reward = 0.0;
    long steps = 0;
    std::optional<DoneReason> reason;  // empty when the controller gave up

    std::string reason_label() const;
    std::string to_key_value() const;
};

struct EpisodeResult {
    std::vector<TrajectoryRow> trajectory;
    EpisodeSummary summary;
};

std::string trajectory_csv_header();
std::string trajectory_csv_row(const TrajectoryRow& row);
void write_trajectory_csv(const EpisodeResult& result, const std::string& path);

// Incrementally fold steps into a summary (shared by every controller loop).
class SummaryAccumulator {
public:
    explicit SummaryAccumulator(const QuadState& initial);
    void add(const QuadState& state, double reward, RewardMode mode);
    EpisodeSummary finish(double hover_time, std::optional<DoneReason> reason) const;

private:
    EpisodeSummary sum_;
    RewardMode prev_mode_ = RewardMode::AltitudeTracking;
    bool first_ = true;
};

} // namespace quadftc
