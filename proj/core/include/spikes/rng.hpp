// rng.hpp — deterministic 64-bit PRNG used for all seeded fixtures.
//
// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-gamma
// increment and the output is a finalizer hash of the state. Chosen for
// trivial cross-language reproducibility: the same seed yields the same
// stream in any implementation of the algorithm.

#pragma once

#include <cstdint>

namespace spikes {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_ = 0;
};

}  // namespace spikes
