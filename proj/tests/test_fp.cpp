#include "doctest.h"

#include "torsionlab/fp.hpp"

#include <stdexcept>
#include <vector>

using namespace torsionlab;

TEST_CASE("primality helper") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(91));    // 7 * 13
}

TEST_CASE("field arithmetic stays in range") {
    Fp a(2, 3), b(2, 3);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 0);
    CHECK((a * b).value() == 1);
    CHECK((-a).value() == 1);
    CHECK(Fp(-1, 3).value() == 2);
    CHECK(Fp(300, 7).value() == 300 % 7);
    CHECK(Fp(0, 5).is_zero());
}

TEST_CASE("non-prime moduli and mixed moduli are rejected") {
    CHECK_THROWS_AS(Fp(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(Fp(1, 1), std::invalid_argument);
    Fp a(1, 3), b(1, 5);
    CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
    CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
}

TEST_CASE("inverses") {
    CHECK(inverse(Fp(2, 3)).value() == 2);
    CHECK(inverse(Fp(1, 7)).value() == 1);
    CHECK(inverse(Fp(3, 5)).value() == 2);
    CHECK_THROWS_AS(inverse(Fp(0, 5)), std::domain_error);
    for (uint32_t p : {3u, 5u, 7u, 11u})
        for (uint32_t a = 1; a < p; ++a)
            CHECK((Fp(a, p) * inverse(Fp(a, p))).value() == 1);
}

TEST_CASE("power map") {
    CHECK(Fp(2, 5).pow(0).value() == 1);
    CHECK(Fp(2, 5).pow(4).value() == 1);    // Fermat
    CHECK(Fp(2, 7).pow(10).value() == 1024 % 7);
    CHECK(Fp(0, 3).pow(5).is_zero());
}

TEST_CASE("binomial residues, pinned values") {
    CHECK(binom_mod_p(6, 3, 3).value() == 2);     // C(6,3) = 20
    CHECK(binom_mod_p(9, 3, 3).value() == 0);     // C(9,3) = 84
    CHECK(binom_mod_p(123, 0, 5).value() == 1);
    CHECK(binom_mod_p(5, 7, 3).value() == 0);     // k > n
    CHECK_THROWS_AS(binom_mod_p(6, 3, 4), std::invalid_argument);
}

TEST_CASE("binomial residues against an addition-only triangle") {
    // Pascal's triangle mod p needs nothing but addition, so it is an
    // independent oracle for the digit-by-digit evaluation.
    for (uint32_t p : {3u, 5u, 7u}) {
        std::vector<std::vector<uint32_t>> row(301);
        row[0] = {1};
        for (size_t n = 1; n <= 300; ++n) {
            row[n].assign(n + 1, 1);
            for (size_t k = 1; k < n; ++k) row[n][k] = (row[n - 1][k - 1] + row[n - 1][k]) % p;
        }
        for (size_t n = 0; n <= 300; ++n)
            for (size_t k = 0; k <= n; ++k)
                REQUIRE(binom_mod_p(n, k, p).value() == row[n][k]);
    }
}

TEST_CASE("binomial residues far beyond word-sized factorials") {
    uint64_t big = 1;
    for (int i = 0; i < 20; ++i) big *= 3;    // 3^20
    CHECK(binom_mod_p(big, big / 3, 3).value() == 0);
    CHECK(binom_mod_p(big + big / 3, big / 3, 3).value() == 1);
    CHECK(binom_mod_p(big, big, 3).value() == 1);
}

TEST_CASE("the divisibility criterion behind the killing coefficient") {
    // for p | n: C(n,p) = 0 mod p exactly when p^2 | n
    for (uint32_t p : {3u, 5u, 7u})
        for (uint32_t n = p; n <= 30 * p; n += p)
            CHECK(binom_mod_p(n, p, p).is_zero() == (n % (p * p) == 0));
}
