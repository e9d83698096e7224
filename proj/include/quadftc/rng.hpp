#pragma once
#include <cmath>
#include <cstdint>

namespace quadftc {

// Deterministic 64-bit generator (splitmix64). Every random quantity in the
// project flows from one master seed through this generator so that runs can
// be reproduced bit-exactly from the manifest, in any language.
//
// State advance and output scrambler, exactly:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// uniform01() maps the top 53 bits to [0, 1):  (z >> 11) * 2^-53.
// gaussian() is Box-Muller on two uniform01 draws (u1 shifted away from 0),
// consuming exactly two raw draws per normal deviate (no caching).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Standard normal deviate, Box-Muller.
    double gaussian() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // 64-bit multiply-shift; bias is < 2^-53 for the n used here (< 2^32).
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    }

    // Derive an independent stream: hash the label into the current state.
    SplitMix64 fork(std::uint64_t label) {
        SplitMix64 child(state_ ^ (0xA0761D6478BD642FULL * (label + 1)));
        child.next_u64();
        return child;
    }

private:
    std::uint64_t state_;
};

} // namespace quadftc
