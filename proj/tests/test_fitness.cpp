#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jumpga/fitness.hpp"

using namespace jumpga;

namespace {

BitString with_ones(int n, int ones) {
    BitString s(n);
    for (int i = 0; i < ones; ++i) s.set_bit(i, true);
    return s;
}

} // namespace

TEST_CASE("jump values from the defining cases") {
    const JumpK f(10, 3);
    CHECK(f.evaluate(BitString::all_ones(10)) == 13); // optimum: k + n
    CHECK(f.evaluate(with_ones(10, 7)) == 10);        // plateau: k + (n-k)
    CHECK(f.evaluate(with_ones(10, 9)) == 1);         // gap: n - |x|
    CHECK(f.evaluate(with_ones(10, 0)) == 3);
    CHECK_THROWS_AS(f.evaluate(BitString(9)), std::invalid_argument);
}

TEST_CASE("classification mirrors the regions") {
    const JumpK f(10, 3);
    CHECK(f.classify(with_ones(10, 7)) == PointClass::Plateau);
    CHECK(f.classify(with_ones(10, 10)) == PointClass::Optimum);
    CHECK(f.classify(with_ones(10, 8)) == PointClass::Gap);
    CHECK(f.classify(with_ones(10, 2)) == PointClass::Slope);
}

TEST_CASE("construction validates k") {
    CHECK_THROWS_AS(JumpK(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(JumpK(10, 11), std::invalid_argument);
    CHECK_NOTHROW(JumpK(10, 10));
    CHECK_NOTHROW(JumpK(1, 1));
}

TEST_CASE("exhaustive region ordering for small n") {
    // Every gap point is strictly below every plateau point; the optimum
    // strictly exceeds everything else.
    for (int n = 1; n <= 12; ++n) {
        for (int k = 1; k <= n; ++k) {
            const JumpK f(n, k);
            int max_gap = -1;
            int min_plateau = 1 << 30;
            int max_non_optimum = -1;
            const int optimum_value = f.evaluate_ones(n);
            for (long g = 0; g < (1L << n); ++g) {
                const int ones = __builtin_popcountl(g);
                const int value = f.evaluate_ones(ones);
                if (ones == n) {
                    CHECK(value == n + k);
                    continue;
                }
                max_non_optimum = std::max(max_non_optimum, value);
                if (f.classify_ones(ones) == PointClass::Gap) max_gap = std::max(max_gap, value);
                if (f.classify_ones(ones) == PointClass::Plateau)
                    min_plateau = std::min(min_plateau, value);
            }
            if (max_gap >= 0 && min_plateau < (1 << 30)) CHECK(max_gap < min_plateau);
            CHECK(optimum_value > max_non_optimum);
        }
    }
}

TEST_CASE("slope is strictly monotone") {
    const JumpK f(30, 5);
    for (int ones = 0; ones < 30 - 5; ++ones)
        CHECK(f.evaluate_ones(ones) < f.evaluate_ones(ones + 1));
}

TEST_CASE("plateau-or-optimum fitness test matches classification") {
    for (int n : {5, 10, 17}) {
        for (int k = 1; k <= n; ++k) {
            const JumpK f(n, k);
            for (int ones = 0; ones <= n; ++ones) {
                const auto cls = f.classify_ones(ones);
                const bool expected =
                    cls == PointClass::Plateau || cls == PointClass::Optimum;
                CHECK(f.is_plateau_or_optimum_fitness(f.evaluate_ones(ones)) == expected);
            }
        }
    }
}

TEST_CASE("onemax counts ones") {
    const OneMax f(12);
    CHECK(f.evaluate(with_ones(12, 5)) == 5);
    CHECK(f.is_optimum_fitness(12));
    CHECK(!f.is_optimum_fitness(11));
}
