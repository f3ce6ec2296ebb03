#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace freqaug {

/// splitmix64 finalizer. Stable across platforms; used to derive independent
/// sub-seeds from a master seed so per-image work is order-independent.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hash-chains a master seed with a path of indices (epoch, image, ...).
/// Every distinct path gives an independent stream seed.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> path) {
    uint64_t s = mix64(master);
    for (uint64_t p : path) s = mix64(s ^ mix64(p + 0x51'7c'c1'b7'27'22'0a'95ULL));
    return s;
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64{seed}; }

}  // namespace freqaug
