#include "doctest.h"

#include "ew/freqmap.hpp"

#include <stdexcept>

using namespace ew;

TEST_CASE("phi grid values")
{
    const PhiGrid g1(1);
    CHECK(g1.value(0) == Rational(-1));
    CHECK(g1.value(1) == Rational(0));
    CHECK(g1.value(2) == Rational(1));

    const PhiGrid g4(4);
    CHECK(g4.value(0) == Rational(-1, 4));
    CHECK(g4.value(1) == Rational(0));
    CHECK(g4.value(3) == Rational(1, 2));
    CHECK(g4.value(5) == Rational(1));
    for (int k = 1; k <= 5; ++k)
        CHECK(g4.value(k - 1) < g4.value(k));

    CHECK_THROWS_AS(PhiGrid(0), std::invalid_argument);
    CHECK_THROWS_AS(g4.value(6), std::out_of_range);
}

TEST_CASE("relative frequency")
{
    CHECK(rel_freq({1, 1, 1}) == Rational(1));
    CHECK(rel_freq({2, 2}) == Rational(0));
    CHECK(rel_freq({1, 2, 1, 2}) == Rational(1, 2));
    CHECK_THROWS_AS(rel_freq({1, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(rel_freq({}), std::invalid_argument);
    CHECK_THROWS_AS(rel_freq({1, 3}), std::invalid_argument);
}

TEST_CASE("quantize nearest bin with downward ties")
{
    const PhiGrid g2(2);
    CHECK(quantize(Rational(1, 4), g2) == 1); // tie between 0 and 1/2
    CHECK(quantize(Rational(3, 4), g2) == 2); // tie between 1/2 and 1

    const PhiGrid g10(10);
    CHECK(quantize(Rational(31, 100), g10) == 4); // phi = 0.3

    const PhiGrid g1(1);
    CHECK(quantize(Rational(1), g1) == 2);
    CHECK(quantize(Rational(0), g1) == 1);

    CHECK_THROWS_AS(quantize(Rational(-1, 10), g2), std::domain_error);
    CHECK_THROWS_AS(quantize(Rational(11, 10), g2), std::domain_error);
}

TEST_CASE("quantize is monotone in the frequency")
{
    const PhiGrid g(7);
    int prev = 1;
    for (long i = 0; i <= 400; ++i) {
        const int k = quantize(Rational(i, 400), g);
        CHECK(k >= prev);
        prev = k;
    }
    CHECK(prev == 8);
}

TEST_CASE("quantize_tilde flags ignorance")
{
    const PhiGrid g2(2);
    CHECK(quantize_tilde({0, 1}, g2) == 0);
    CHECK(quantize_tilde({1, 2}, g2) == 2); // f = 1/2 on-grid
    const PhiGrid g1(1);
    CHECK(quantize_tilde({1}, g1) == 2);

    // zero exactly when an ignorance entry is present, over all short strings,
    // and the bin index always lands in {0..nu+1}
    for (int nu : {1, 2, 3}) {
        const PhiGrid grid(nu);
        for (int n = 1; n <= 6; ++n) {
            long total = 1;
            for (int i = 0; i < n; ++i)
                total *= 3;
            for (long code = 0; code < total; ++code) {
                OutcomeString s(static_cast<std::size_t>(n));
                long rest = code;
                bool has_zero = false;
                for (int i = 0; i < n; ++i) {
                    s[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
                    has_zero |= s[static_cast<std::size_t>(i)] == 0;
                    rest /= 3;
                }
                const int k = quantize_tilde(s, grid);
                CHECK(k >= 0);
                CHECK(k <= nu + 1);
                CHECK((k == 0) == has_zero);
            }
        }
    }
}

TEST_CASE("bin_of_count interval rule")
{
    const PhiGrid g2(2);
    CHECK(bin_of_count(1, 4, g2) == 1); // right-closed boundary at l = 1
    CHECK(bin_of_count(2, 4, g2) == 2);

    const PhiGrid g5(5);
    CHECK(bin_of_count(5, 10, g5) == 3); // f = 1/2 ties down to phi = 0.4

    CHECK_THROWS_AS(bin_of_count(-1, 4, g2), std::invalid_argument);
    CHECK_THROWS_AS(bin_of_count(5, 4, g2), std::invalid_argument);
}

TEST_CASE("count ranges partition {0..N} and match quantize")
{
    for (int nu : {1, 2, 3, 5, 8, 13, 20}) {
        const PhiGrid g(nu);
        for (long n : {1L, 2L, 3L, 7L, 20L, 60L}) {
            long covered = 0;
            long expected_lo = 0;
            for (int k = 1; k <= nu + 1; ++k) {
                const CountRange r = bin_count_range(k, n, g);
                if (r.hi < r.lo)
                    continue;
                CHECK(r.lo == expected_lo);
                expected_lo = r.hi + 1;
                covered += r.hi - r.lo + 1;
            }
            CHECK(covered == n + 1);
            for (long l = 0; l <= n; ++l)
                CHECK(bin_of_count(l, n, g) == quantize(Rational(l, n), g));
        }
    }
}
