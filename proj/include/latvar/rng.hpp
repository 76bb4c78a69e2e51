#ifndef LATVAR_RNG_HPP
#define LATVAR_RNG_HPP

#include <cstdint>
#include <random>

namespace latvar {

// splitmix64 step; used as the counter-based stream-splitting function.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives an independent generator for worker stream `stream` from a single
// 64-bit root seed. Stream k is seeded by splitmix64 iterated from
// root_seed + k, so streams are reproducible and order-independent.
inline std::mt19937_64 make_stream(std::uint64_t root_seed, std::uint64_t stream) {
    std::uint64_t s = root_seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

} // namespace latvar

#endif
