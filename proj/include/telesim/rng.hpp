#pragma once

#include <cstdint>
#include <random>

namespace telesim::rng {

// Algorithm identifier recorded alongside Monte Carlo estimates so that
// results can be reproduced bit-for-bit by other implementations.
inline constexpr const char* kAlgorithmId = "splitmix64->mt19937_64,u53";

// splitmix64 step (Steele, Lea, Flood 2014). Used only to derive stream
// seeds; the streams themselves are mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic per-stream engine: stream 0, 1, ... of a master seed are
// statistically independent and stable across platforms.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    std::uint64_t derived = 0;
    for (std::uint64_t i = 0; i <= stream; ++i) {
        derived = splitmix64(state);
    }
    return std::mt19937_64(derived);
}

// Uniform double in [0, 1) from the top 53 bits. Avoids
// std::generate_canonical, whose output is implementation-defined.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace telesim::rng
