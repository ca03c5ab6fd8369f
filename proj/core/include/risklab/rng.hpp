// rng.hpp -- counter-based splittable random number generation.
//
// Every random quantity in risklab is a pure function of (key, counter), where
// the key is derived from a master seed plus stream identifiers (sample index,
// trial index, matrix dimensions).  There is no mutable generator state, so
// results are independent of evaluation order and thread count, and any single
// draw can be recomputed in isolation.
//
// The per-draw word is the splitmix64 output function (Steele/Lea/Flood 2014;
// Vigna's fixed-increment variant) applied at key + counter * golden-ratio
// increment: equivalent to skipping a splitmix64 stream to an arbitrary index.

#ifndef RISKLAB_RNG_HPP
#define RISKLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>

namespace risklab::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function (finalizer).
inline std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// i-th 64-bit word of the stream identified by `key`.
inline std::uint64_t u64_at(std::uint64_t key, std::uint64_t i) {
    return splitmix64(key + (i + 1) * kGolden);
}

// Derive a stream key from a master seed and a stream index (sample or trial
// number).  Two rounds of mixing decorrelate nearby seeds and indices.
inline std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t stream) {
    return splitmix64(splitmix64(master_seed) + (stream + 1) * kGolden);
}

// Uniform double in [0, 1) from the i-th word.
inline double uniform01_at(std::uint64_t key, std::uint64_t i) {
    return static_cast<double>(u64_at(key, i) >> 11) * 0x1.0p-53;
}

// Standard-normal pair by the trigonometric Box-Muller transform.  Pair j
// consumes words 2j and 2j+1; u1 is mapped into (0, 1] so log never sees 0.
// The trig form (rather than polar rejection) keeps the draw a pure function
// of the counter.
inline std::pair<double, double> normal_pair_at(std::uint64_t key, std::uint64_t j) {
    const double u1 =
        static_cast<double>((u64_at(key, 2 * j) >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01_at(key, 2 * j + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace risklab::rng

#endif  // RISKLAB_RNG_HPP
