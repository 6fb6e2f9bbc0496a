#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "jumpga/bitstring.hpp"
#include "jumpga/random.hpp"

namespace jumpga {

/// Per-bit mutation probability chi/n.
struct MutationRate {
    double chi;
    int n;

    MutationRate(double chi_, int n_) : chi(chi_), n(n_) {
        if (n < 1) throw std::invalid_argument("MutationRate: n must be positive");
        if (!(chi > 0.0) || chi > static_cast<double>(n))
            throw std::invalid_argument("MutationRate: require 0 < chi <= n");
    }

    double per_bit() const { return chi / static_cast<double>(n); }
};

/// Uniform crossover: every position takes the bit of one parent chosen
/// independently with probability 1/2. Writes into `out` to avoid
/// allocations in the engine loop.
inline void uniform_crossover_into(BitString& out, const BitString& x, const BitString& y,
                                   RandomSource& rng) {
    if (x.size() != y.size())
        throw std::invalid_argument("uniform_crossover: length mismatch");
    out = x;
    auto wx = x.words();
    auto wy = y.words();
    auto wo = out.mutable_words();
    for (std::size_t w = 0; w < wx.size(); ++w) {
        const std::uint64_t take_y = rng.next_u64();
        // Equal bits are unaffected: (b & ~m) | (b & m) == b, so tail
        // words stay zero without re-masking.
        wo[w] = (wx[w] & ~take_y) | (wy[w] & take_y);
    }
}

inline BitString uniform_crossover(const BitString& x, const BitString& y, RandomSource& rng) {
    BitString out;
    uniform_crossover_into(out, x, y, rng);
    return out;
}

/// Standard bit mutation: each bit flips independently with probability
/// chi/n. Flip positions are generated directly by geometric gap
/// sampling, which costs O(flips) expected work and produces exactly the
/// per-bit Bernoulli distribution.
inline void mutate_in_place(BitString& x, const MutationRate& rate, RandomSource& rng) {
    const double p = rate.per_bit();
    const std::size_t n = x.size();
    if (p >= 1.0) {
        x = x.complement();
        return;
    }
    const double log_keep = std::log1p(-p);
    std::size_t pos = 0;
    while (true) {
        const double gap = std::floor(std::log(rng.next_double_open()) / log_keep);
        if (gap >= static_cast<double>(n)) return; // no further flip fits
        pos += static_cast<std::size_t>(gap);
        if (pos >= n) return;
        x.flip_bit(pos);
        ++pos;
    }
}

inline BitString standard_bit_mutation(const BitString& x, const MutationRate& rate,
                                       RandomSource& rng) {
    if (rate.n != static_cast<int>(x.size()))
        throw std::invalid_argument("standard_bit_mutation: rate.n must equal x.length");
    BitString out = x;
    mutate_in_place(out, rate, rng);
    return out;
}

} // namespace jumpga
