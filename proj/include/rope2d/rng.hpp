#pragma once

#include <cstdint>

namespace rope2d {

// Deterministic 64-bit generator (xorshift64*, Marsaglia / Vigna).
// Recurrence: x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
// output = x * 0x2545F4914F6CDD1D.
// The all-zero state is a fixed point of the xorshift step, so seed 0 is
// remapped to a nonzero constant.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [-1, 1).
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

}  // namespace rope2d
