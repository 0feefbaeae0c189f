#pragma once

#include <cmath>
#include <cstdint>

namespace noisecov::rng {

// Counter-based generator built on SplitMix64 finalizers. Every draw is a pure
// function of (seed, stream, index), so scenario sweeps get independent,
// reproducible streams and values can be generated in any order.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

/// Uniform on the open interval (0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return (static_cast<double>(bits(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal deviate, Box-Muller on two counter draws.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const double u1 = uniform01(seed, stream, 2 * index);
    const double u2 = uniform01(seed, stream, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Independent per-scenario seed derived from a base seed.
inline std::uint64_t scenario_seed(std::uint64_t base_seed, std::uint64_t scenario) {
    return splitmix64(splitmix64(base_seed) ^ (scenario + 1));
}

}  // namespace noisecov::rng
