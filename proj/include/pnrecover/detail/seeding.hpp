#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>

namespace pnrecover::detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a seed and a list of words; used to derive
/// independent per-frame / per-box random streams.
inline std::uint64_t mixSeed(std::uint64_t seed, std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t w : words) h = splitmix64(h ^ splitmix64(w));
    return h;
}

inline std::uint64_t bitsOf(double v) noexcept { return std::bit_cast<std::uint64_t>(v); }

}  // namespace pnrecover::detail
