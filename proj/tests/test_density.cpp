#include <catch2/catch_amalgamated.hpp>

#include "rbt/density.hpp"

using rbt::BigInt;
using rbt::BigRat;

TEST_CASE("g values", "[density]") {
    CHECK(rbt::g(4, 4) == 1);
    CHECK(rbt::g(4, 5) == 2);
    CHECK(rbt::g(4, 8) == 16);
    CHECK(rbt::g(4, 13) == 109);
    CHECK(rbt::g(4, 16) == 260);
    CHECK(rbt::g(3, 9) == 30);
    CHECK(rbt::g(5, 10) == 32);
    CHECK(rbt::g(4, 0) == 0);
    CHECK(rbt::g(4, 3) == 0);
    CHECK_THROWS_AS(rbt::density_table(2), std::domain_error);
}

TEST_CASE("g_bruteforce values", "[density]") {
    CHECK(rbt::g_bruteforce(4, 5) == 2);
    CHECK(rbt::g_bruteforce(4, 8) == 16);
    CHECK(rbt::g_bruteforce(5, 5) == 1);
    CHECK(rbt::g_bruteforce(4, 16) == 260);
}

TEST_CASE("equitable optimality sample", "[density]") {
    // full range k <= 6, n <= 300 runs in the acceptance suite
    for (int k = 3; k <= 6; ++k)
        for (long long n = 0; n <= 80; ++n) {
            CAPTURE(k, n);
            CHECK(rbt::g(k, n) == rbt::g_bruteforce(k, n));
        }
}

TEST_CASE("delta values and degree identity", "[density]") {
    CHECK(rbt::delta(4, 4) == 1);
    CHECK(rbt::delta(4, 16) == 65);
    CHECK(rbt::delta(4, 3) == 0);
    for (int k = 3; k <= 6; ++k)
        for (long long n = 1; n <= 500; ++n) {
            CAPTURE(k, n);
            CHECK(rbt::g(k, n) - rbt::g(k, n - 1) == rbt::delta(k, n));
        }
}

TEST_CASE("small-n identity", "[density]") {
    for (int k = 3; k <= 8; ++k)
        for (long long n = k; n <= static_cast<long long>(k) * (k - 1); ++n) {
            CAPTURE(k, n);
            CHECK(rbt::g(k, n) == rbt::p_max_product(n, k));
        }
}

TEST_CASE("power-of-k closed form", "[density]") {
    for (int k = 4; k <= 6; ++k) {
        const BigInt kk = rbt::ipow(k, static_cast<unsigned long long>(k));
        for (BigInt s = k; s <= 10000; s *= k) {
            const long long n = s.convert_to<long long>();
            const BigInt expected =
                (rbt::ipow(n, static_cast<unsigned long long>(k)) - n) / (kk - k);
            CAPTURE(k, n);
            CHECK(rbt::g(k, n) == expected);
        }
    }
    CHECK(rbt::g(4, 16) == 260);
}

TEST_CASE("induction inequality", "[density]") {
    // g_k(n-1) + 1 + p(n-k, k-1) <= g_k(n) for k < n <= k(k-1)
    for (int k = 4; k <= 8; ++k)
        for (long long n = k + 1; n <= static_cast<long long>(k) * (k - 1); ++n) {
            CAPTURE(k, n);
            CHECK(rbt::g(k, n - 1) + 1 + rbt::p_max_product(n - k, k - 1) <=
                  rbt::g(k, n));
        }
}

TEST_CASE("density_constant", "[density]") {
    CHECK(rbt::density_constant(4) == BigRat(2, 21));
    CHECK(rbt::density_constant(3) == BigRat(1, 4));
    CHECK(rbt::density_constant(5) == BigRat(1, 26));
    CHECK_THROWS_AS(rbt::density_constant(2), std::domain_error);
}

TEST_CASE("g and p bounds", "[density]") {
    const auto b16 = rbt::g_bounds(4, 16);
    CHECK(b16.lower == BigRat(49152, 252));
    CHECK(b16.upper == BigRat(65520, 252));
    CHECK(b16.upper == 260);
    CHECK(BigRat(rbt::g(4, 16)) >= b16.lower);
    CHECK(BigRat(rbt::g(4, 16)) <= b16.upper);

    const auto b13 = rbt::g_bounds(4, 13);
    CHECK(b13.upper == BigRat(28548, 252));
    CHECK(BigRat(rbt::g(4, 13)) <= b13.upper);

    const auto b21 = rbt::g_bounds(5, 21);
    CHECK(BigRat(rbt::g(5, 21)) >= b21.lower);
    CHECK(BigRat(rbt::g(5, 21)) <= b21.upper);

    const auto p7 = rbt::p_bounds(3, 7);
    CHECK(p7.upper == BigRat(343, 27));
    CHECK(p7.lower == BigRat(343, 27) * (1 - BigRat(4, 27) * BigRat(27, 49)));
    CHECK(BigRat(rbt::p_max_product(7, 3)) <= p7.upper);
    CHECK(BigRat(rbt::p_max_product(7, 3)) >= p7.lower);

    const auto p13 = rbt::p_bounds(4, 13);
    CHECK(rbt::p_max_product(13, 4) == 108);
    CHECK(BigRat(108) >= p13.lower);
    CHECK(BigRat(108) <= p13.upper);

    CHECK_THROWS_AS(rbt::g_bounds(3, 100), std::domain_error);
    CHECK_THROWS_AS(rbt::g_bounds(4, 12), std::domain_error);
    CHECK_THROWS_AS(rbt::p_bounds(4, 12), std::domain_error);

    // containment on a sample of the full domain (full range in acceptance)
    for (int k = 4; k <= 6; ++k)
        for (long long n = static_cast<long long>(k) * (k - 1) + 1; n <= 400; ++n) {
            const auto gb = rbt::g_bounds(k, n);
            const auto pb = rbt::p_bounds(k, n);
            const BigRat gv(rbt::g(k, n));
            const BigRat pv(rbt::p_max_product(n, k));
            CAPTURE(k, n);
            CHECK(gv >= gb.lower);
            CHECK(gv <= gb.upper);
            CHECK(pv >= pb.lower);
            CHECK(pv <= pb.upper);
        }
}

TEST_CASE("brute force range guard", "[density]") {
    rbt::BruteForceDensity table(10);
    CHECK_THROWS_AS(table.value(100000), std::overflow_error);
}
