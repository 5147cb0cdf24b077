#pragma once

#include <cstdint>
#include <random>

namespace hdpo {

// All randomness in the project flows through streams derived here from
// named 64-bit components. No global RNG state exists anywhere.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t first, Rest... rest) {
    std::uint64_t s = splitmix64(first);
    ((s = mix_seed(s, static_cast<std::uint64_t>(rest))), ...);
    return s;
}

template <typename... Parts>
std::mt19937_64 make_stream(Parts... parts) {
    return std::mt19937_64(derive_seed(static_cast<std::uint64_t>(parts)...));
}

}  // namespace hdpo
