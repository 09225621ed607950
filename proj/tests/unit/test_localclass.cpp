#include <doctest.h>

#include <random>

#include "acceptance.hpp"
#include "hermlat/localclass.hpp"
#include "hermlat/symbols.hpp"

using namespace hermlat;

namespace {

KMatrix m2(long p, KElem a, KElem b, KElem d) {
    KMatrix g(p, 2, 2);
    g(0, 0) = a;
    g(0, 1) = b;
    g(1, 0) = b.conj();
    g(1, 1) = d;
    return g;
}

}  // namespace

TEST_SUITE("localclass") {
    TEST_CASE("classification examples") {
        long p = 7;
        RingCtx at7 = RingCtx::local_ok(7, 7);
        KMatrix h = m2(p, KElem(p, 0), KElem(p, 0, 1), KElem(p, 0));
        CHECK(classify_local(at7, HermLattice(at7, KMatrix::block_diag({h, h}))) ==
              LocalClassLabel{LocalLabel::ModularP, 4});

        RingCtx at2 = RingCtx::local_ok(5, 2);
        KMatrix h0 = m2(5, KElem(5, 0), KElem(5, 1), KElem(5, 0));
        CHECK(classify_local(at2, HermLattice(at2, h0)) == LocalClassLabel{LocalLabel::RU_subnormal, 2});
        CHECK(classify_local(at2, HermLattice(at2, KMatrix::identity(5, 2))) ==
              LocalClassLabel{LocalLabel::RU_normal_plus, 2});

        RingCtx d2 = RingCtx::local_ok(2, 2);
        KMatrix rp = m2(2, KElem(2, -2), KElem(2, 0, 1), KElem(2, 4));
        CHECK(classify_local(d2, HermLattice(d2, rp)) == LocalClassLabel{LocalLabel::RP_unique, 2});
    }

    TEST_CASE("standard gram examples") {
        RingCtx at7 = RingCtx::local_ok(7, 7);
        CHECK(standard_gram({LocalLabel::ModularP, 2}, at7).gram == m2(7, KElem(7, 0), KElem(7, 0, 1), KElem(7, 0)));
        RingCtx at2 = RingCtx::local_ok(5, 2);
        CHECK(standard_gram({LocalLabel::RU_subnormal, 2}, at2).gram == m2(5, KElem(5, 0), KElem(5, 1), KElem(5, 0)));
        RingCtx d2 = RingCtx::local_ok(2, 2);
        CHECK(standard_gram({LocalLabel::RP_norm2, 2}, d2).gram == m2(2, KElem(2, -2), KElem(2, 0, 1), KElem(2, 0)));
    }

    TEST_CASE("local_exists examples") {
        CHECK(local_exists(RingCtx::local_ok(3, 2), 2, Rational(2)).empty());
        CHECK(local_exists(RingCtx::local_ok(3, 2), 2, Rational(1)) == std::set<LocalLabel>{LocalLabel::SelfDualUnramified});
        CHECK(local_exists(RingCtx::local_ok(7, 7), 2, Rational(7)).empty());
        CHECK(local_exists(RingCtx::local_ok(2, 2), 2, Rational(-2)) ==
              std::set<LocalLabel>{LocalLabel::RP_normH, LocalLabel::RP_norm2});
        CHECK(local_exists(RingCtx::local_ok(5, 2), 4, Rational(1)) ==
              std::set<LocalLabel>{LocalLabel::RU_normal_mixed, LocalLabel::RU_subnormal});
    }

    TEST_CASE("local_exists cardinalities") {
        for (long p : {2L, 3L, 5L, 7L, 13L, 17L})
            for (long ell : {2L, p})
                for (int n = 2; n <= 8; n += 2)
                    for (long d : {1L, -1L, 2L, -2L, 3L, 5L, -3L, 7L, p, -p, 2 * p}) {
                        auto s = local_exists(RingCtx::local_ok(p, ell), n, Rational(d));
                        CHECK(s.size() <= 2);
                        if (artin(p, ell) != 0 || (ell == p && p != 2)) CHECK(s.size() <= 1);
                    }
    }

    TEST_CASE("round trips at small precision") {
        std::string failure;
        int n = acceptance::local_round_trips(77, 64, 3, failure);
        CHECK(failure.empty());
        CHECK(n > 40);
    }

    TEST_CASE("every standard gram exists where local_exists says so") {
        for (long p : {2L, 3L, 5L, 13L})
            for (long ell : {2L, p}) {
                RingCtx ctx = RingCtx::local_ok(p, ell);
                for (int n = 2; n <= 6; n += 2)
                    for (LocalLabel lab : {LocalLabel::SelfDualUnramified, LocalLabel::ModularP, LocalLabel::RP_unique,
                                           LocalLabel::RP_normH, LocalLabel::RP_norm2, LocalLabel::RU_normal_plus,
                                           LocalLabel::RU_normal_mixed, LocalLabel::RU_subnormal}) {
                        HermLattice L;
                        try {
                            L = standard_gram({lab, n}, ctx);
                        } catch (const Error&) {
                            continue;
                        }
                        Rational d = L.gram.det().a;
                        CHECK(local_exists(ctx, n, d).count(lab) == 1);
                    }
            }
    }

    TEST_CASE("jordan reduction gives orthogonal lines and planes") {
        std::mt19937_64 rng(21);
        for (auto [p, ell] : std::vector<std::pair<long, long>>{{5, 2}, {3, 3}, {7, 2}}) {
            KMatrix g = congruent(acceptance::random_local_unimodular(rng, p, ell, 4),
                                  KMatrix::diag(p, {Rational(1), Rational(ell), Rational(ell), Rational(ell * ell)}));
            JordanForm jf = jordan_reduce(g, ell);
            KMatrix red = congruent(jf.transform, g);
            int off = 0;
            for (const auto& b : jf.blocks) {
                int k = b.gram.rows();
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        if ((i >= off && i < off + k) != (j >= off && j < off + k) && (i >= off && i < off + k))
                            CHECK(red(i, j).is_zero());
                off += k;
            }
            CHECK(off == 4);
        }
    }

    TEST_CASE("errors") {
        RingCtx at7 = RingCtx::local_ok(7, 7);
        CHECK_THROWS_AS(classify_local(at7, HermLattice(at7, KMatrix::identity(7, 2))), Error);
        CHECK_THROWS_AS(classify_local(RingCtx::global_ok(7), HermLattice(at7, KMatrix::identity(7, 2))), Error);
        CHECK_THROWS_AS(standard_gram({LocalLabel::ModularP, 3}, at7), Error);
    }
}
