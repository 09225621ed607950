#include <doctest.h>

#include <random>

#include "hermlat/exactnum.hpp"
#include "hermlat/symbols.hpp"
#include "oracles.hpp"

using namespace hermlat;

TEST_SUITE("exactnum") {
    TEST_CASE("rational helpers canonicalize") {
        CHECK(make_rational(4, 2) == Rational(2));
        CHECK(make_rational(4, 2).get_den() == 1);
        CHECK(parse_rational("-6/4") == make_rational(-3, 2));
        CHECK(to_string(make_rational(-3, 2)) == "-3/2");
        CHECK(to_string(Rational(5)) == "5");
        CHECK_THROWS_AS(parse_rational("1/0"), Error);
        CHECK_THROWS_AS(parse_rational("abc"), Error);
    }

    TEST_CASE("valuations and residues") {
        CHECK(vq(Int(8), 2) == 3);
        CHECK(vq(make_rational(3, 50), 5) == -2);
        CHECK(vq(Int(0), 3) == kInfVal);
        CHECK(mod_long(Int(-1), 8) == 7);
        CHECK(mod_long(make_rational(1, 3), 8) == 3);
        CHECK(is_integral_at(make_rational(1, 3), 2));
        CHECK_FALSE(is_integral_at(make_rational(1, 2), 2));
    }

    TEST_CASE("primes and factoring") {
        CHECK(primes_up_to(20) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19});
        CHECK(next_prime(14) == 17);
        CHECK_FALSE(is_prime(1));
        CHECK(factor(Int(360)) == std::vector<std::pair<long, long>>{{2, 3}, {3, 2}, {5, 1}});
        Int big = Int(1000003) * Int(1000033);
        CHECK_THROWS_AS(factor(big, 1000), Error);
    }

    TEST_CASE("k_norm examples") {
        CHECK(k_norm(KElem(7, 1)) == 1);
        CHECK(k_norm(KElem(7, 0, 1)) == 7);
        CHECK(k_norm(KElem(7, make_rational(3, 2), make_rational(1, 2))) == 4);
    }

    TEST_CASE("field arithmetic properties") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long> d(-20, 20);
        for (long p : {2L, 3L, 5L, 7L, 13L})
            for (int t = 0; t < 50; ++t) {
                KElem x(p, make_rational(d(rng), 1 + std::abs(d(rng))), make_rational(d(rng), 1 + std::abs(d(rng))));
                KElem y(p, make_rational(d(rng), 1 + std::abs(d(rng))), make_rational(d(rng), 1 + std::abs(d(rng))));
                CHECK(k_norm(x * y) == k_norm(x) * k_norm(y));
                CHECK(k_norm(x.conj()) == k_norm(x));
                CHECK((x * y).conj() == x.conj() * y.conj());
                if (!x.is_zero()) CHECK(x * x.inverse() == KElem(p, 1));
            }
    }

    TEST_CASE("omega coordinates round trip") {
        for (long p : {2L, 3L, 5L, 7L}) {
            KElem w = KElem::omega(p);
            auto [c, d] = o_coords(w);
            CHECK(c == 0);
            CHECK(d == 1);
            KElem x(p, make_rational(5, 2), make_rational(3, 2));
            auto [c2, d2] = o_coords(x);
            CHECK(from_o_coords(p, c2, d2) == x);
        }
    }

    TEST_CASE("matrix algebra") {
        long p = 7;
        KMatrix g(p, 2, 2);
        g(0, 0) = KElem(p, 2);
        g(0, 1) = KElem(p, 0, 1);
        g(1, 0) = KElem(p, 0, -1);
        g(1, 1) = KElem(p, 4);
        CHECK(g.is_hermitian());
        CHECK(g.det() == KElem(p, 1));
        CHECK(g * g.inverse() == KMatrix::identity(p, 2));
        KMatrix t = KMatrix::identity(p, 2);
        t(1, 0) = KElem(p, 1, 1);
        CHECK(congruent(t, g).det() == g.det() * KElem(p, k_norm(t.det())));
        KMatrix z(p, 2, 2);
        CHECK_THROWS_AS(z.inverse(), Error);
    }

    TEST_CASE("det_class_of examples") {
        CHECK(det_class_of(Rational(1), 5).is_trivial());
        DetClass c35 = det_class_of(Rational(3), 5);
        CHECK(c35.inert_support.empty());
        CHECK(c35.rs_bit == 1);
        DetClass c115 = det_class_of(Rational(11), 5);
        CHECK(c115.inert_support == std::vector<long>{11});
        CHECK(c115.rs_bit == 0);
        DetClass c23 = det_class_of(Rational(2), 3);
        CHECK(c23.inert_support == std::vector<long>{2});
        CHECK(c23.rs_bit == 0);
    }

    TEST_CASE("gamma_rs_generator") {
        CHECK(gamma_rs_generator(5) == 3);
        CHECK(gamma_rs_generator(13) == 7);
        CHECK_THROWS_AS(gamma_rs_generator(7), Error);
    }

    TEST_CASE("det_class_of is a norm-invariant homomorphism") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<long> d(1, 60);
        for (long p : {2L, 3L, 5L, 7L, 13L, 17L})
            for (int t = 0; t < 40; ++t) {
                Rational a = make_rational(d(rng), d(rng)), b = make_rational(d(rng), d(rng));
                CHECK(det_class_of(a * b, p) == det_class_of(a, p) * det_class_of(b, p));
                KElem x(p, d(rng) - 30, d(rng) - 30);
                if (!x.is_zero()) CHECK(det_class_of(a * k_norm(x), p) == det_class_of(a, p));
            }
    }

    TEST_CASE("det class of 2 depends on p mod 8 for p = 1 mod 4") {
        for (long p : primes_up_to(100)) {
            if (p % 4 != 1) continue;
            DetClass c = det_class_of(Rational(2), p);
            if (p % 8 == 5)
                CHECK(c == det_class_of(Rational(gamma_rs_generator(p)), p));
            else
                CHECK(c.is_trivial());
        }
    }

    TEST_CASE("trivial class iff local norm everywhere (oracle)") {
        for (long p : {3L, 5L, 7L})
            for (long q = 1; q <= 30; ++q) {
                bool everywhere = true;
                for (long ell : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
                    if (ell > 13 && q % ell != 0) continue;
                    if (oracle::hilbert(Rational(q), Rational(-p), ell) != 1) everywhere = false;
                }
                CHECK_MESSAGE(det_class_of(Rational(q), p).is_trivial() == everywhere, "p=" << p << " q=" << q);
            }
    }
}
