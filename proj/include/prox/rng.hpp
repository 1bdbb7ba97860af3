#ifndef PROX_RNG_HPP
#define PROX_RNG_HPP

#include <cstdint>

namespace prox {

/// splitmix64: the documented generator behind every seeded computation in
/// this project. State transition and output scrambler are fixed bit-exactly
/// so results reproduce across implementations:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output = z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) by rejection; bound must be positive.
    uint64_t below(uint64_t bound) {
        uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform integer in [lo, hi], inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

private:
    uint64_t state_;
};

}  // namespace prox

#endif
