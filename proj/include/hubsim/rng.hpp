#pragma once

#include <cstdint>

namespace hubsim {

// Counter-based pseudo-random generator: output i is a SplitMix64-style hash
// of (key, i). Streams are seekable and splittable, so a run partitioned into
// work items (trajectories, twirl instances, sweep points) replays bit-exactly
// no matter how the items are scheduled.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed) : key_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

    // Child generator for an independent stream; deterministic in (key, stream).
    CounterRng split(uint64_t stream) const {
        return CounterRng(mix(key_ + mix(stream + 0x9e3779b97f4a7c15ULL)), 0);
    }

    uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix(key_ ^ counter_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased (Lemire's method).
    uint64_t below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            const uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    CounterRng(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}

    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace hubsim
