#pragma once

#include <cmath>
#include <cstdint>

namespace th {

// Counter-based random numbers: every variate is a pure function of
// (seed, stream, i, j, k). Weights and clock rings can therefore be sampled
// in any order, from any thread, and replicas differ only by seed.

namespace rng {

inline uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t key(uint64_t seed, uint64_t stream, int64_t i, int64_t j, uint64_t k) {
    uint64_t h = mix(seed ^ 0x6a09e667f3bcc908ull);
    h = mix(h ^ stream);
    h = mix(h ^ static_cast<uint64_t>(i));
    h = mix(h ^ static_cast<uint64_t>(j));
    h = mix(h ^ k);
    return h;
}

// Uniform on (0,1), never 0 or 1: 53-bit mantissa plus half-ulp offset.
inline double u01(uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Exp(rate) by inverse CDF.
inline double exponential(uint64_t bits, double rate) {
    return -std::log(u01(bits)) / rate;
}

// Stream tags.  Weight and clock streams must never collide: the exact
// envelope identity relies on z and xi consuming identical clock variates
// while the LPP weights form an independent family.
constexpr uint64_t stream_weight     = 0x57454947ull; // LPP environment weights
constexpr uint64_t stream_clock      = 0x434c4f43ull; // Poisson clock rings (shared realisation)
constexpr uint64_t stream_clock_fast = 0x464b4c4bull; // memoryless per-column resampling
constexpr uint64_t stream_init       = 0x494e4954ull; // Bernoulli initial data

// Per-replica seed derivation.
inline uint64_t replica_seed(uint64_t seed, uint64_t replica) {
    return mix(seed ^ mix(replica ^ 0x7265706cull));
}

} // namespace rng
} // namespace th
