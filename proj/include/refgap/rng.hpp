#pragma once

#include <cstdint>

namespace refgap {

// SplitMix64 (Steele/Lea/Flood). Every seeded experiment in this project
// draws from this generator; one next() per draw, coins take the top bit.
// The draw order is part of each experiment's contract, see README.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    bool coin() { return (next() >> 63) != 0; }

    // Uniform value in [0, bound). Rejection sampling on the top range so
    // the result is unbiased and reproducible across platforms.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Independent stream for sub-experiment k of a seeded run.
    static uint64_t derive(uint64_t seed, uint64_t k) {
        SplitMix64 g(seed ^ (k + 0x9e3779b97f4a7c15ull));
        return g.next();
    }

private:
    uint64_t state_;
};

} // namespace refgap
