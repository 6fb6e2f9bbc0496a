#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jumpga/bitstring.hpp"

using namespace jumpga;

TEST_CASE("ones_count basics") {
    CHECK(BitString(8).ones_count() == 0);
    CHECK(BitString::all_ones(8).ones_count() == 8);
    CHECK(BitString::from_string("10110100").ones_count() == 4);
}

TEST_CASE("hamming distance basics") {
    const BitString x = BitString::from_string("0011111111");
    const BitString y = BitString::from_string("0101111111");
    CHECK(hamming_distance(x, x) == 0);
    CHECK(hamming_distance(x, y) == 2);
    CHECK(hamming_distance(BitString::from_string("0000"), BitString::from_string("1111")) == 4);
    CHECK_THROWS_AS(hamming_distance(BitString(4), BitString(5)), std::invalid_argument);
}

TEST_CASE("textual round trip, index 0 leftmost") {
    const std::string text = "100110001011101";
    const BitString s = BitString::from_string(text);
    CHECK(s.to_string() == text);
    CHECK(s.bit(0) == true);
    CHECK(s.bit(1) == false);
    CHECK(s.size() == text.size());
    CHECK_THROWS_AS(BitString::from_string("10x1"), std::invalid_argument);
}

TEST_CASE("bit manipulation across word boundaries") {
    BitString s(130);
    s.set_bit(0, true);
    s.set_bit(63, true);
    s.set_bit(64, true);
    s.set_bit(129, true);
    CHECK(s.ones_count() == 4);
    s.flip_bit(64);
    CHECK(s.ones_count() == 3);
    CHECK(!s.bit(64));
}

TEST_CASE("complement partitions the ones") {
    RandomSource rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.next_index(200);
        const BitString x = BitString::random(n, rng);
        const BitString c = x.complement();
        CHECK(x.ones_count() + c.ones_count() == static_cast<int>(n));
        CHECK(hamming_distance(x, c) == static_cast<int>(n));
    }
}

TEST_CASE("triangle inequality on random triples") {
    RandomSource rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.next_index(150);
        const BitString x = BitString::random(n, rng);
        const BitString y = BitString::random(n, rng);
        const BitString z = BitString::random(n, rng);
        CHECK(hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z));
    }
}

TEST_CASE("equality and hashing agree") {
    RandomSource rng(23);
    const BitString a = BitString::random(90, rng);
    BitString b = a;
    const BitStringHash hash;
    CHECK(a == b);
    CHECK(hash(a) == hash(b));
    b.flip_bit(42);
    CHECK(a != b);
}
