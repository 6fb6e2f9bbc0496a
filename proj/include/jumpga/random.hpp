#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace jumpga {

/// SplitMix64 finalizer. Stateless 64-bit mixer used for seeding and for
/// deriving independent per-run streams from a master seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Deterministic, platform-independent random source (xoshiro256**,
/// state seeded with a SplitMix64 stream). One instance per run; never
/// shared between threads.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9e3779b97f4a7c15ULL;
            word = mix64(s);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_double_open() { return 1.0 - next_double(); }

    /// Unbiased uniform integer in [0, bound). Requires bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // Lemire's multiply-shift rejection method.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::size_t next_index(std::size_t n) { return static_cast<std::size_t>(next_below(n)); }

    bool bernoulli(double p) { return next_double() < p; }

    /// Seed derivation rule (documented in the README and kept stable):
    ///   run_seed = mix64(mix64(master ^ mix64(a + 0x6a09e667f3bcc909))
    ///                    ^ mix64(b + 0xbb67ae8584caa73b))
    /// Streams derived from distinct (a, b) never share state.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t s = mix64(master ^ mix64(a + 0x6a09e667f3bcc909ULL));
        return mix64(s ^ mix64(b + 0xbb67ae8584caa73bULL));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int s) { return (x << s) | (x >> (64 - s)); }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace jumpga
