#pragma once

#include <cstdint>

namespace torinterp {

/// Counter-based 64-bit generator (SplitMix64 applied to seed + counter).
/// Output is a pure function of (seed, counter), so node generation is
/// reproducible byte-for-byte across platforms and independent of call
/// interleaving.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace torinterp
