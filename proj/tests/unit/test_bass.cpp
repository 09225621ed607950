#include <doctest.h>

#include <random>

#include "acceptance.hpp"
#include "hermlat/bass.hpp"

using namespace hermlat;

namespace {

KVec unit_vec(long p, int n, int i) {
    KVec v(n, KElem(p, 0));
    v[i] = KElem(p, 1);
    return v;
}

PseudoBasis standard(const OrderChain& c, const std::vector<int>& idx) {
    int n = static_cast<int>(idx.size());
    std::vector<KVec> g;
    for (int i = 0; i < n; ++i) g.push_back(unit_vec(c.d, n, i));
    return make_pseudo_basis(c, g, idx);
}

KMatrix m2(long p, KElem a, KElem b, KElem d) {
    KMatrix g(p, 2, 2);
    g(0, 0) = a;
    g(0, 1) = b;
    g(1, 0) = b.conj();
    g(1, 1) = d;
    return g;
}

// v_2 of every entry of x - y is at least N
bool congruent_mod_2n(const KMatrix& x, const KMatrix& y, int N) {
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            KElem d = x(i, j) - y(i, j);
            auto [c, e] = o_coords(d);
            if (vq(c, 2) < N || vq(e, 2) < N) return false;
        }
    return true;
}

}  // namespace

TEST_SUITE("bass") {
    TEST_CASE("order chain validation") {
        CHECK_THROWS_AS(OrderChain::make(4, 2, 1, {1, 0}), Error);
        CHECK_THROWS_AS(OrderChain::make(3, 2, 1, {0, 1}), Error);
        CHECK_THROWS_AS(OrderChain::make(3, 2, 1, {2, 0}), Error);
        OrderChain c = OrderChain::r2(3);
        CHECK(c.level(0) == 1);
        CHECK(c.level(2) == 0);
        CHECK(c.alpha(2) == 2);
        CHECK(c.index_of_level(0) == 2);
        CHECK(c.in_order(KElem(3, 0, 1), 1));
        CHECK_FALSE(c.in_order(KElem::omega(3), 1));
        CHECK(c.in_order(KElem::omega(3), 2));
    }

    TEST_CASE("conductor examples") {
        OrderChain c = OrderChain::r2(3);
        CHECK(conductor_generator(c, 2) == 2);
        CHECK(conductor_generator(c, 1) == 1);
        OrderChain c4 = OrderChain::make(3, 2, 2, {2, 1, 0});
        CHECK(conductor_generator(c4, 2) == 2);
        CHECK(conductor_generator(c4, 3) == 4);
    }

    TEST_CASE("type examples") {
        OrderChain c = OrderChain::r2(7);
        TypeInfo a = pseudo_basis_and_type(c, acceptance::zl_spanning_set(c, standard(c, {1, 1})));
        CHECK(a.r == 2);
        CHECK(a.s == 0);
        TypeInfo b = pseudo_basis_and_type(c, acceptance::zl_spanning_set(c, standard(c, {2})));
        CHECK(b.r == 0);
        CHECK(b.s == 1);
        TypeInfo m = pseudo_basis_and_type(c, acceptance::zl_spanning_set(c, standard(c, {1, 2})));
        CHECK(m.r == 1);
        CHECK(m.s == 1);
        CHECK(m.reduced_dim == 3);
        REQUIRE(m.basis_built);
        CHECK(same_module(c, m.basis, standard(c, {1, 2})));
    }

    TEST_CASE("type is invariant under Z_2 basis change of the generators") {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<long> d(-3, 3);
        for (int t = 0; t < 30; ++t) {
            long p = t % 2 ? 3 : 11;
            acceptance::R2Fixture fx = acceptance::random_r2_fixture(rng, p, 1 + t % 4);
            std::vector<KVec> gens = acceptance::zl_spanning_set(fx.chain, fx.M);
            int k = static_cast<int>(gens.size());
            for (int s = 0; s < 3 * k; ++s) {
                int i = static_cast<int>(rng() % k), j = static_cast<int>(rng() % k);
                if (i == j) continue;
                long a = d(rng);
                for (size_t c = 0; c < gens[i].size(); ++c) gens[i][c] += Rational(a) * gens[j][c];
            }
            std::shuffle(gens.begin(), gens.end(), rng);
            TypeInfo ti = pseudo_basis_and_type(fx.chain, gens);
            CHECK(ti.r == fx.type.r);
            CHECK(ti.s == fx.type.s);
        }
    }

    TEST_CASE("perfect pairing examples") {
        OrderChain c = OrderChain::r2(3);
        CHECK(is_perfect_pairing(c, standard(c, {1, 1}), KMatrix::identity(3, 2)));
        OrderChain w = OrderChain::make(2, 2, 1, {1, 0});
        CHECK(is_perfect_pairing(w, standard(w, {1, 2}), KMatrix::diag(2, {Rational(1), Rational(2)})));
        CHECK_FALSE(is_perfect_pairing(w, standard(w, {2}), KMatrix::identity(2, 1)));
        CHECK(perfectness(w, standard(w, {2}), KMatrix::identity(2, 1)) == PerfectStatus::IntegralityViolation);
        CHECK_THROWS_AS(is_perfect_pairing_strict(w, standard(w, {2}), KMatrix::identity(2, 1)), Error);
        CHECK_FALSE(is_perfect_pairing(c, standard(c, {1, 2}), KMatrix::diag(3, {Rational(2), Rational(2)})));
    }

    TEST_CASE("decomposition examples") {
        OrderChain w = OrderChain::make(2, 2, 1, {1, 0});
        KMatrix g = KMatrix::diag(2, {Rational(1), Rational(2)});
        auto b = orthogonal_decompose(w, standard(w, {1, 2}), g);
        REQUIRE(b.size() == 2);
        CHECK(b[0].order_index == 1);
        CHECK(b[0].gram == KMatrix::diag(2, {Rational(1)}));
        CHECK(b[1].order_index == 2);
        CHECK(b[1].gram == KMatrix::diag(2, {Rational(2)}));

        OrderChain c = OrderChain::r2(3);
        KMatrix g2 = m2(3, KElem(3, 1), KElem(3, 1), KElem(3, 2));
        auto b2 = orthogonal_decompose(c, standard(c, {1, 1}), g2);
        REQUIRE(b2.size() == 2);
        CHECK(b2[0].gram == KMatrix::identity(3, 1));
        CHECK(b2[1].gram == KMatrix::identity(3, 1));
        CHECK_THROWS_AS(orthogonal_decompose(c, standard(c, {1, 2}), KMatrix::diag(3, {Rational(2), Rational(2)})),
                        Error);
    }

    TEST_CASE("hyperbolize examples") {
        KMatrix h = m2(3, KElem(3, 0), KElem(3, 1), KElem(3, 0));
        KMatrix u = hyperbolize(3, h);
        CHECK(congruent_mod_2n(congruent(u, h), h, 64));
        KMatrix g = m2(3, KElem(3, 2), KElem(3, 1), KElem(3, 2));
        KMatrix v = hyperbolize(3, g);
        CHECK(congruent_mod_2n(congruent(v, g), h, 64));
        CHECK_THROWS_AS(hyperbolize(3, m2(3, KElem(3, 1), KElem(3, 1), KElem(3, 2))), Error);
        try {
            hyperbolize(3, m2(3, KElem(3, 1), KElem(3, 1), KElem(3, 2)));
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotEvenDiagonal);
        }
    }

    TEST_CASE("hyperbolize on random even planes") {
        std::mt19937_64 rng(17);
        for (long p : {3L, 7L, 11L, 19L})
            for (int t = 0; t < 5; ++t) {
                acceptance::R2Fixture fx = acceptance::r2_fixture_of(p, R2Class{2, 0, false}, rng, 6);
                bool all_r = fx.M.order_index[0] == 1 && fx.M.order_index[1] == 1;
                REQUIRE(all_r);
                const KMatrix& G = fx.G;
                KMatrix U = hyperbolize(p, G, 40);
                CHECK(congruent_mod_2n(congruent(U, G), m2(p, KElem(p, 0), KElem(p, 1), KElem(p, 0)), 40));
            }
    }

    TEST_CASE("classification examples") {
        OrderChain c = OrderChain::r2(3);
        auto a = classify_unimodular_R2(c, standard(c, {1, 1}), KMatrix::identity(3, 2));
        CHECK(a.first == R2Class{2, 0, true});
        CHECK(a.second == "L1^2");
        auto h = classify_unimodular_R2(c, standard(c, {1, 1}), m2(3, KElem(3, 0), KElem(3, 1), KElem(3, 0)));
        CHECK(h.first == R2Class{2, 0, false});
        CHECK(h.second == "H");
        auto l0 = classify_unimodular_R2(c, standard(c, {2}), KMatrix::diag(3, {Rational(2)}));
        CHECK(l0.first == R2Class{0, 1, false});
        CHECK(l0.second == "L0");
    }

    TEST_CASE("labels parse back") {
        for (int r = 0; r <= 5; ++r)
            for (int s = 0; s <= 3; ++s)
                for (bool od : {false, true}) {
                    if (r + s == 0 || (r % 2 && !od) || (r == 0 && od)) continue;
                    R2Class k{r, s, od};
                    CHECK(parse_r2_label(k.label()) == k);
                }
        CHECK_THROWS_AS(parse_r2_label("H + L1"), Error);
    }

    TEST_CASE("classification invariant under random automorphisms") {
        std::mt19937_64 rng(31);
        for (R2Class k : {R2Class{1, 0, true}, R2Class{2, 0, false}, R2Class{2, 1, true}, R2Class{3, 1, true},
                          R2Class{4, 0, false}, R2Class{0, 2, false}})
            for (int t = 0; t < 30; ++t) {
                acceptance::R2Fixture fx = acceptance::r2_fixture_of(7, k, rng, 8);
                CHECK(classify_unimodular_R2(fx.chain, fx.M, fx.G).first == k);
            }
    }

    TEST_CASE("decomposition invariants on random fixtures") {
        std::mt19937_64 rng(41);
        for (int t = 0; t < 20; ++t) {
            acceptance::R2Fixture fx = acceptance::random_r2_fixture(rng, 11, 1 + t % 5);
            auto blocks = orthogonal_decompose(fx.chain, fx.M, fx.G);
            int r = 0, s = 0;
            for (const auto& b : blocks) {
                (b.order_index == 1 ? r : s) += b.gram.rows();
                std::vector<int> idx(b.generators.size(), b.order_index);
                CHECK(is_perfect_pairing(fx.chain, make_pseudo_basis(fx.chain, b.generators, idx), b.gram));
            }
            CHECK(r == fx.type.r);
            CHECK(s == fx.type.s);
        }
    }

    TEST_CASE("F2 forms") {
        CHECK(f2_classify(F2BilForm{2, {{0, 0}, {0, 0}}}).rank == 0);
        F2Class h = f2_classify(F2BilForm{2, {{0, 1}, {1, 0}}});
        CHECK(h.rank == 2);
        CHECK(h.alternating);
        CHECK_FALSE(f2_classify(F2BilForm{2, {{1, 0}, {0, 1}}}).alternating);
        CHECK(f2_orbit_count(1) == 2);
        CHECK(f2_orbit_count(2) == 4);
        CHECK(f2_orbit_count(3) == 5);
        for (int n = 1; n <= 4; ++n) CHECK(f2_orbit_count(n) == f2_class_count(n));
    }

    TEST_CASE("unit norms of Z_2 + 2O") {
        OrderChain w = OrderChain::make(2, 2, 1, {1, 0});
        auto v = unit_norm_residues(w, 6);
        CHECK(v == std::vector<long>{1, 9, 17, 25, 33, 41, 49, 57});
    }
}
