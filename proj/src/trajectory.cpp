#include "quadftc/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace quadftc {

std::string EpisodeSummary::reason_label() const {
    return reason ? done_reason_name(*reason) : "AllActionsCrash";
}

std::string EpisodeSummary::to_key_value() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "hover_time=%.9g alt_min=%.9g alt_max=%.9g x_min=%.9g x_max=%.9g "
                  "y_min=%.9g y_max=%.9g yaw_rate_peak=%.9g mode_switches=%ld "
                  "total_reward=%.9g steps=%ld reason=%s",
                  hover_time, alt_min, alt_max, x_min, x_max, y_min, y_max, yaw_rate_peak,
                  mode_switches, total_reward, steps, reason_label().c_str());
    return buf;
}

std::string trajectory_csv_header() {
    return "t,u,v,w,p,q,r,phi,theta,psi,xn,yn,zn,omega1,omega2,omega3,omega4,reward,mode";
}

std::string trajectory_csv_row(const TrajectoryRow& row) {
    char buf[640];
    const QuadState& s = row.state;
    std::snprintf(buf, sizeof buf,
                  "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,"
                  "%.9g,%.9g,%.9g,%.9g,%.9g,%s",
                  row.t, s.u, s.v, s.w, s.p, s.q, s.r, s.phi, s.theta, s.psi, s.xn, s.yn,
                  s.zn, row.omega[0], row.omega[1], row.omega[2], row.omega[3], row.reward,
                  reward_mode_name(row.mode).c_str());
    return buf;
}

void write_trajectory_csv(const EpisodeResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << trajectory_csv_header() << "\n";
    for (const auto& row : result.trajectory) out << trajectory_csv_row(row) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

SummaryAccumulator::SummaryAccumulator(const QuadState& initial) {
    sum_.alt_min = sum_.alt_max = -initial.zn;
    sum_.x_min = sum_.x_max = initial.xn;
    sum_.y_min = sum_.y_max = initial.yn;
}

void SummaryAccumulator::add(const QuadState& state, double reward, RewardMode mode) {
    sum_.steps += 1;
    sum_.total_reward += reward;
    sum_.alt_min = std::min(sum_.alt_min, -state.zn);
    sum_.alt_max = std::max(sum_.alt_max, -state.zn);
    sum_.x_min = std::min(sum_.x_min, state.xn);
    sum_.x_max = std::max(sum_.x_max, state.xn);
    sum_.y_min = std::min(sum_.y_min, state.yn);
    sum_.y_max = std::max(sum_.y_max, state.yn);
    sum_.yaw_rate_peak = std::max(sum_.yaw_rate_peak, std::fabs(state.r));
    if (first_) {
        prev_mode_ = mode;
        first_ = false;
    } else if (mode != prev_mode_) {
        sum_.mode_switches += 1;
        prev_mode_ = mode;
    }
}

EpisodeSummary SummaryAccumulator::finish(double hover_time,
                                          std::optional<DoneReason> reason) const {
    EpisodeSummary out = sum_;
    out.hover_time = hover_time;
    out.reason = reason;
    return out;
}

} // namespace quadftc
