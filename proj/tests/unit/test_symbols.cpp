#include <doctest.h>

#include <random>

#include "hermlat/symbols.hpp"
#include "oracles.hpp"

using namespace hermlat;

TEST_SUITE("symbols") {
    TEST_CASE("legendre examples") {
        CHECK(legendre(Int(1), 7) == 1);
        CHECK(legendre(Int(3), 5) == -1);
        CHECK(legendre(Int(2), 7) == 1);
        CHECK_THROWS_AS(legendre(Int(14), 7), Error);
        CHECK_THROWS_AS(legendre(Int(3), 2), Error);
    }

    TEST_CASE("legendre agrees with listing squares") {
        for (long ell : primes_up_to(60)) {
            if (ell == 2) continue;
            for (long a = -40; a <= 40; ++a)
                if (a % ell != 0) CHECK(legendre(Int(a), ell) == oracle::legendre(a, ell));
        }
    }

    TEST_CASE("hilbert examples") {
        CHECK(hilbert(Rational(2), Rational(3), 5) == 1);
        CHECK(hilbert(Rational(3), Rational(-5), 5) == -1);
        CHECK(hilbert(Rational(2), Rational(-7), 2) == 1);
        CHECK(hilbert(Rational(-1), Rational(-1), 2) == -1);
        CHECK(hilbert(Rational(-1), Rational(-1), kInfinity) == -1);
    }

    TEST_CASE("hilbert agrees with brute-force solvability") {
        for (long a : {-30L, -15L, -7L, -6L, -3L, -2L, -1L, 1L, 2L, 3L, 5L, 6L, 7L, 10L, 14L, 15L})
            for (long b : {-14L, -11L, -5L, -3L, -2L, -1L, 2L, 3L, 5L, 7L, 11L})
                for (long ell : {2L, 3L, 5L, 7L, 11L})
                    CHECK_MESSAGE(hilbert(Rational(a), Rational(b), ell) == oracle::hilbert_sf(a, b, ell),
                                  "(" << a << "," << b << ")_" << ell);
    }

    TEST_CASE("hilbert symmetry, bimultiplicativity, product formula") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<long> d(-500, 500);
        auto rq = [&] {
            long n = 0;
            while (n == 0) n = d(rng);
            long m = 0;
            while (m == 0) m = std::abs(d(rng));
            return make_rational(n, m);
        };
        for (int t = 0; t < 200; ++t) {
            Rational a1 = rq(), a2 = rq(), b = rq();
            int prod = 1;
            for (long v : hilbert_support(a1, b)) {
                prod *= hilbert(a1, b, v);
                CHECK(hilbert(a1, b, v) == hilbert(b, a1, v));
            }
            CHECK(prod == 1);
            for (long v : {kInfinity, 2L, 3L, 5L, 7L})
                CHECK(hilbert(a1 * a2, b, v) == hilbert(a1, b, v) * hilbert(a2, b, v));
        }
    }

    TEST_CASE("positive numbers are norms at infinity") {
        for (long p : {2L, 3L, 7L}) CHECK(hilbert(make_rational(5, 3), Rational(-p), kInfinity) == 1);
    }

    TEST_CASE("artin examples and splitting oracle") {
        CHECK(artin(7, 2) == 1);
        CHECK(artin(5, 2) == 0);
        CHECK(artin(5, 11) == -1);
        CHECK(artin(3, 2) == -1);
        CHECK(artin(3, 3) == 0);
        CHECK(artin(2, 2) == 0);
        for (long p : primes_up_to(40))
            for (long ell : primes_up_to(40)) {
                if (ell == 2 || ell == p) continue;
                CHECK(artin(p, ell) == oracle::legendre(-p, ell));
            }
    }
}
