#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace openslice::rng {

/// splitmix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derives an independent stream seed from a master seed and a purpose tag.
/// The derivation is fixed: it depends only on (seed, tag, index), never on
/// configuration order, so identical seeds give identical draws everywhere.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    return mix(seed ^ mix(fnv1a(tag) + 0x9e3779b97f4a7c15ULL * index));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    return std::mt19937_64{derive_seed(seed, tag, index)};
}

/// Uniform double in [0, 1) with 53 random bits. Unlike
/// std::uniform_real_distribution this mapping is pinned by the standard's
/// engine contract, so streams are reproducible across standard libraries.
inline double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& engine, double lo, double hi) {
    return lo + (hi - lo) * uniform01(engine);
}

} // namespace openslice::rng
