#pragma once

#include <cstdint>

namespace fatshatter {

// All randomized routines in this library draw from xoshiro256++ (Blackman &
// Vigna), seeded through SplitMix64. Independent streams are derived from a
// (seed, stream id) pair, so per-trial parallelism cannot change results:
// trial k always sees the stream keyed by (seed, k) no matter which thread
// runs it.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mixes a seed with a stream/purpose tag into fresh seed material.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64_next(s);
    s = stream_id ^ 0xd1b54a32d192ed03ULL;
    std::uint64_t b = splitmix64_next(s);
    s = a ^ b;
    return splitmix64_next(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64_next(s);
    }

    /// Generator for stream `stream_id` of the experiment keyed by `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(derive_seed(seed, stream_id));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Rademacher sign: +1 or -1 with equal probability.
    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

    /// Uniform integer in [0, n), n >= 1. Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace fatshatter
