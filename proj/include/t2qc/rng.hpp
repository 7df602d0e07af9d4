#pragma once

#include <cstdint>

namespace t2qc {

/// Counter-based uniform draws: every number is a pure function of
/// (seed, stream, temperature index, sweep, site), so site updates can run
/// in any order or thread layout and still reproduce bit-identically.
namespace rng {

enum class Stream : std::uint64_t {
    Measurement = 0,  // accept/measure draw per site update
    GateErrorP1 = 1,
    GateErrorP2 = 2,
    Init = 3,  // initial lattice randomization
};

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t temp_index,
                             std::uint64_t sweep, std::uint64_t site) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ (stream + 0x517cc1b727220a95ull));
    h = mix(h ^ temp_index);
    h = mix(h ^ sweep);
    h = mix(h ^ site);
    return h;
}

/// Uniform in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

constexpr double uniform(std::uint64_t seed, Stream stream, std::uint64_t temp_index,
                         std::uint64_t sweep, std::uint64_t site) {
    return to_unit(hash(seed, static_cast<std::uint64_t>(stream), temp_index, sweep, site));
}

}  // namespace rng
}  // namespace t2qc
