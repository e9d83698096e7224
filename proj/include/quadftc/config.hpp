#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

#include "quadftc/ddpg_agent.hpp"
#include "quadftc/dp_agent.hpp"
#include "quadftc/environment.hpp"
#include "quadftc/quad_state.hpp"

namespace quadftc {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Flat `key = value` configuration with `#` comments and dotted section
// prefixes. Every field has a default; unknown keys are errors; parse errors
// carry the line number.
struct RunConfig {
    QuadParams quad;
    EnvConfig env;
    ActionGrid dp;
    DdpgConfig ddpg;

    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string label = "run";
    std::vector<std::string> sweep_ics{"nominal", "ic1", "ic2", "ic3", "ic4", "ic5"};

    void validate() const;

    // Canonical text form: every key in fixed order, doubles with %.17g.
    // Re-parsing the serialized text reproduces the config exactly.
    std::string serialize() const;

    static RunConfig parse_text(const std::string& text);
    static RunConfig load_file(const std::string& path);

    // FNV-1a 64-bit hash of the canonical text.
    std::uint64_t config_hash() const;
};

std::uint64_t fnv1a64(const std::string& text);

} // namespace quadftc
