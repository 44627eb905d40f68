#pragma once

/// @file random.hpp
/// Random source used throughout the library.
///
/// All sampling is built on std::mt19937_64, whose output sequence is fixed
/// by the standard. The helpers below replace the implementation-defined
/// std::*_distribution classes; seeded results are identical across
/// standard library implementations.

#include <cstdint>
#include <random>

namespace rvea {

using Rng = std::mt19937_64;

namespace detail {
__extension__ using uint128 = unsigned __int128;
} // namespace detail

/// Uniform integer in [0, bound). Lemire's multiply-shift with rejection, exact.
/// `bound` must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    std::uint64_t x = rng();
    detail::uint128 m = static_cast<detail::uint128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = rng();
            m = static_cast<detail::uint128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fair coin.
inline bool coin_flip(Rng& rng) { return (rng() >> 63) != 0; }

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of replicate `index` under a base seed:
/// mix64(seed XOR (index + 1) * 0x9e3779b97f4a7c15).
constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed ^ ((index + 1) * 0x9e3779b97f4a7c15ULL));
}

} // namespace rvea
