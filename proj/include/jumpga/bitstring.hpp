#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jumpga/random.hpp"

namespace jumpga {

/// Fixed-length binary genotype, bits packed into 64-bit words.
/// Position 0 is the leftmost character in the textual form.
class BitString {
public:
    BitString() = default;

    /// All-zeros string of length n.
    explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitString all_ones(std::size_t n) {
        BitString s(n);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.mask_tail();
        return s;
    }

    static BitString random(std::size_t n, RandomSource& rng) {
        BitString s(n);
        for (auto& w : s.words_) w = rng.next_u64();
        s.mask_tail();
        return s;
    }

    /// Parses a '0'/'1' string, index 0 first.
    static BitString from_string(std::string_view text) {
        BitString s(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1')
                s.set_bit(i, true);
            else if (text[i] != '0')
                throw std::invalid_argument("BitString::from_string: expected '0' or '1'");
        }
        return s;
    }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool bit(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set_bit(std::size_t i, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip_bit(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    int ones_count() const {
        int total = 0;
        for (std::uint64_t w : words_) total += std::popcount(w);
        return total;
    }

    BitString complement() const {
        BitString s(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.mask_tail();
        return s;
    }

    std::string to_string() const {
        std::string text(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (bit(i)) text[i] = '1';
        return text;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    /// Raw word access for the variation operators. Tail bits past size()
    /// must be left zero.
    std::span<std::uint64_t> mutable_words() { return words_; }

    friend bool operator==(const BitString& a, const BitString& b) = default;

private:
    void mask_tail() {
        if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

inline int hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    const auto wa = a.words();
    const auto wb = b.words();
    int total = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) total += std::popcount(wa[i] ^ wb[i]);
    return total;
}

struct BitStringHash {
    std::size_t operator()(const BitString& s) const {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ s.size();
        for (std::uint64_t w : s.words()) {
            h ^= w;
            h *= 0x100000001b3ULL;
            h = mix64(h);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace jumpga
