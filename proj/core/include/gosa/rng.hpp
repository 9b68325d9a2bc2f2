#pragma once

#include <cstdint>

namespace gosa {

/// Identifies one reproducible random stream. The same (master, stream)
/// pair always regenerates the same sequence; distinct streams under one
/// master are non-overlapping for all practical lengths.
struct Seed {
    std::uint64_t master = 0;
    std::uint32_t stream = 0;

    /// Seed for a derived sub-stream (repetition r, run k, ...).
    [[nodiscard]] Seed derive(std::uint32_t offset) const {
        return Seed{master, stream + offset};
    }
};

/// PCG32 (XSH-RR 64/32), the generator frozen for this project.
/// Small state, jump-free stream selection via the increment, identical
/// output on every platform.
class Rng {
public:
    explicit Rng(Seed seed) {
        inc_ = (static_cast<std::uint64_t>(seed.stream) << 1u) | 1u;
        state_ = 0u;
        next_u32();
        state_ += seed.master;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted =
            static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        const auto hi = static_cast<std::uint64_t>(next_u32());
        const auto lo = static_cast<std::uint64_t>(next_u32());
        return (hi << 32u) | lo;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in [0, n), n >= 1. Unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 1;
};

/// Name recorded in output metadata so runs can be replayed elsewhere.
inline constexpr const char* kRngName = "pcg32-xsh-rr";

} // namespace gosa
