#ifndef OGTT_RANDOM_HPP
#define OGTT_RANDOM_HPP

#include <cstdint>
#include <random>

namespace ogtt {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent seeds from one root seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for sub-stream (stream, index) of a root seed. Distinct (stream, index)
/// pairs give unrelated engines, so work split across threads stays reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                    std::uint64_t index = 0) noexcept {
    return mix64(mix64(mix64(root) ^ stream) + index);
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace ogtt

#endif // OGTT_RANDOM_HPP
