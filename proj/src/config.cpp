#include "quadftc/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace quadftc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
    }
    if (pos != v.size())
        throw ConfigError("line " + std::to_string(line) + ": trailing junk in number '" + v + "'");
    return out;
}

long parse_long(const std::string& v, int line) {
    std::size_t pos = 0;
    long out;
    try {
        out = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": expected an integer, got '" + v + "'");
    }
    if (pos != v.size())
        throw ConfigError("line " + std::to_string(line) + ": trailing junk in integer '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": expected true/false, got '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty element in list");
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) throw ConfigError("line " + std::to_string(line) + ": empty list");
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, int line)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Key {
    Setter set;
    Getter get;
};

#define KEY_DOUBLE(name, field)                                                       \
    {name,                                                                            \
     Key{[](RunConfig& c, const std::string& v, int l) { c.field = parse_double(v, l); }, \
         [](const RunConfig& c) { return fmt_double(c.field); }}}
#define KEY_LONG(name, field, type)                                                   \
    {name,                                                                            \
     Key{[](RunConfig& c, const std::string& v, int l) {                              \
             c.field = static_cast<type>(parse_long(v, l));                           \
         },                                                                           \
         [](const RunConfig& c) { return std::to_string(c.field); }}}
#define KEY_BOOL(name, field)                                                         \
    {name,                                                                            \
     Key{[](RunConfig& c, const std::string& v, int l) { c.field = parse_bool(v, l); }, \
         [](const RunConfig& c) { return c.field ? std::string("true") : std::string("false"); }}}

const std::map<std::string, Key>& key_table() {
    static const std::map<std::string, Key> table = {
        KEY_DOUBLE("quad.mass", quad.mass),
        KEY_DOUBLE("quad.g", quad.g),
        KEY_DOUBLE("quad.jx", quad.Jx),
        KEY_DOUBLE("quad.jy", quad.Jy),
        KEY_DOUBLE("quad.jz", quad.Jz),
        KEY_DOUBLE("quad.jxz", quad.Jxz),
        KEY_DOUBLE("quad.lx", quad.Lx),
        KEY_DOUBLE("quad.ly", quad.Ly),
        KEY_DOUBLE("quad.ld", quad.Ld),
        KEY_DOUBLE("quad.c_torque", quad.c_torque),
        KEY_DOUBLE("quad.rho", quad.rho),
        KEY_DOUBLE("quad.a_lift", quad.a_lift),
        KEY_DOUBLE("quad.n_blades", quad.n_blades),
        KEY_DOUBLE("quad.chord", quad.chord),
        KEY_DOUBLE("quad.r_rotor", quad.R_rotor),
        KEY_DOUBLE("quad.theta0", quad.theta0),
        KEY_DOUBLE("quad.theta1", quad.theta1),
        KEY_DOUBLE("quad.omega_max", quad.omega_max),
        KEY_BOOL("quad.yaw_moment_literal", quad.yaw_moment_literal),
        KEY_BOOL("quad.thrust_translation_sum_of_squares",
                 quad.thrust_translation_sum_of_squares),

        KEY_DOUBLE("env.dt", env.dt),
        KEY_DOUBLE("env.episode_horizon", env.episode_horizon),
        KEY_DOUBLE("env.failure_altitude", env.failure_altitude),
        KEY_LONG("env.failed_rotor", env.failed_rotor, int),
        KEY_DOUBLE("env.yaw_rate_threshold", env.yaw_rate_threshold),
        KEY_DOUBLE("env.hysteresis_ratio", env.hysteresis_ratio),
        KEY_DOUBLE("env.gamma", env.gamma),
        {"env.axes",
         Key{[](RunConfig& c, const std::string& v, int l) {
                 if (v == "standard") c.env.axes = AxesMode::Standard;
                 else if (v == "transformed") c.env.axes = AxesMode::Transformed;
                 else throw ConfigError("line " + std::to_string(l) +
                                        ": env.axes must be standard|transformed");
             },
             [](const RunConfig& c) {
                 return c.env.axes == AxesMode::Standard ? std::string("standard")
                                                         : std::string("transformed");
             }}},
        KEY_DOUBLE("env.w_alt", env.w_alt),
        KEY_DOUBLE("env.w_p", env.w_p),
        KEY_DOUBLE("env.w_q", env.w_q),
        KEY_DOUBLE("env.w_r", env.w_r),
        KEY_DOUBLE("env.w_tilt", env.w_tilt),
        KEY_DOUBLE("env.alt_target", env.alt_target),
        KEY_DOUBLE("env.alt_lookahead_s", env.alt_lookahead_s),
        KEY_DOUBLE("env.alt_error_cap", env.alt_error_cap),
        KEY_DOUBLE("env.alt_error_far_slope", env.alt_error_far_slope),
        KEY_DOUBLE("env.obs_xn_lo", env.obs_bounds[0].lo),
        KEY_DOUBLE("env.obs_xn_hi", env.obs_bounds[0].hi),
        KEY_DOUBLE("env.obs_yn_lo", env.obs_bounds[1].lo),
        KEY_DOUBLE("env.obs_yn_hi", env.obs_bounds[1].hi),
        KEY_DOUBLE("env.obs_zn_lo", env.obs_bounds[2].lo),
        KEY_DOUBLE("env.obs_zn_hi", env.obs_bounds[2].hi),
        KEY_DOUBLE("env.obs_phi_lo", env.obs_bounds[3].lo),
        KEY_DOUBLE("env.obs_phi_hi", env.obs_bounds[3].hi),
        KEY_DOUBLE("env.obs_theta_lo", env.obs_bounds[4].lo),
        KEY_DOUBLE("env.obs_theta_hi", env.obs_bounds[4].hi),
        KEY_DOUBLE("env.obs_psi_lo", env.obs_bounds[5].lo),
        KEY_DOUBLE("env.obs_psi_hi", env.obs_bounds[5].hi),

        {"dp.levels",
         Key{[](RunConfig& c, const std::string& v, int l) {
                 c.dp.levels = parse_double_list(v, l);
             },
             [](const RunConfig& c) { return join_doubles(c.dp.levels); }}},
        KEY_LONG("dp.lookahead_depth", dp.lookahead_depth, int),

        KEY_LONG("ddpg.buffer_capacity", ddpg.buffer_capacity, std::size_t),
        KEY_LONG("ddpg.minibatch", ddpg.minibatch, std::size_t),
        KEY_DOUBLE("ddpg.tau", ddpg.tau),
        KEY_DOUBLE("ddpg.actor_lr", ddpg.actor_lr),
        KEY_DOUBLE("ddpg.critic_lr", ddpg.critic_lr),
        KEY_LONG("ddpg.episodes", ddpg.episodes, long),
        KEY_LONG("ddpg.warmup", ddpg.warmup, std::size_t),
        KEY_DOUBLE("ddpg.train_horizon_s", ddpg.train_horizon_s),
        KEY_DOUBLE("ddpg.ou_theta", ddpg.ou_theta),
        KEY_DOUBLE("ddpg.ou_sigma", ddpg.ou_sigma),
        KEY_DOUBLE("ddpg.ou_sigma_final", ddpg.ou_sigma_final),
        KEY_LONG("ddpg.hidden1", ddpg.hidden1, std::size_t),
        KEY_LONG("ddpg.hidden2", ddpg.hidden2, std::size_t),
        KEY_BOOL("ddpg.critic_sigmoid_output", ddpg.critic_sigmoid_output),
        KEY_BOOL("ddpg.sample_table3_ics", ddpg.sample_table3_ics),

        {"run.seed",
         Key{[](RunConfig& c, const std::string& v, int l) {
                 try {
                     c.seed = std::stoull(v);
                 } catch (const std::exception&) {
                     throw ConfigError("line " + std::to_string(l) + ": bad seed '" + v + "'");
                 }
             },
             [](const RunConfig& c) { return std::to_string(c.seed); }}},
        {"run.out_dir", Key{[](RunConfig& c, const std::string& v, int) { c.out_dir = v; },
                            [](const RunConfig& c) { return c.out_dir; }}},
        {"run.label", Key{[](RunConfig& c, const std::string& v, int) { c.label = v; },
                          [](const RunConfig& c) { return c.label; }}},
        {"run.sweep_ics",
         Key{[](RunConfig& c, const std::string& v, int l) {
                 c.sweep_ics.clear();
                 std::stringstream items(v);
                 std::string item;
                 while (std::getline(items, item, ',')) {
                     item = trim(item);
                     if (item.empty()) continue;
                     if (!InitialCondition::parse(item))
                         throw ConfigError("line " + std::to_string(l) +
                                           ": unknown initial condition '" + item + "'");
                     c.sweep_ics.push_back(item);
                 }
             },
             [](const RunConfig& c) {
                 std::string out;
                 for (std::size_t i = 0; i < c.sweep_ics.size(); ++i) {
                     if (i) out += ",";
                     out += c.sweep_ics[i];
                 }
                 return out;
             }}},
    };
    return table;
}

#undef KEY_DOUBLE
#undef KEY_LONG
#undef KEY_BOOL

} // namespace

void RunConfig::validate() const {
    quad.validate();
    env.validate();
    dp.validate();
    ddpg.validate();
    for (const auto& b : env.obs_bounds)
        if (!(b.hi > b.lo)) throw ConfigError("observation bounds must satisfy hi > lo");
}

std::string RunConfig::serialize() const {
    std::string out;
    for (const auto& [name, key] : key_table())
        out += name + " = " + key.get(*this) + "\n";
    return out;
}

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string body = trim(raw);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = key_table().find(key);
        if (it == key_table().end())
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        it->second.set(cfg, value, line);
    }
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t RunConfig::config_hash() const { return fnv1a64(serialize()); }

} // namespace quadftc
