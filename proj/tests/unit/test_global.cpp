#include <doctest.h>

#include "hermlat/genus.hpp"
#include "hermlat/symbols.hpp"

using namespace hermlat;

namespace {

DetClass two(long p) { return det_class_of(Rational(2), p); }

}  // namespace

TEST_SUITE("global") {
    TEST_CASE("existence examples") {
        CHECK(exists_modular(5, 2, Ring::OK, trivial_class(5)));
        CHECK_FALSE(exists_modular(3, 2, Ring::OK, trivial_class(3)));
        CHECK(exists_modular(11, 6, Ring::R, two(11)));
        CHECK_FALSE(exists_modular(11, 6, Ring::R, trivial_class(11)));
        CHECK_FALSE(exists_modular(7, 6, Ring::R, trivial_class(7)));
        CHECK_FALSE(exists_modular(7, 6, Ring::R, two(7)));
        CHECK_FALSE(exists_modular(5, 3, Ring::OK, trivial_class(5)));
        CHECK_THROWS_AS(exists_modular(5, 4, Ring::R, trivial_class(5)), Error);
    }

    TEST_CASE("enumeration examples") {
        auto g = genus_enumerate(5, 4, Ring::OK);
        REQUIRE(g.size() == 2);
        CHECK(g[0].norm == 5);
        CHECK(g[1].norm == 10);
        CHECK(genus_enumerate(3, 4, Ring::R).size() == 5);
        CHECK(genus_enumerate(7, 4, Ring::R).size() == 7);
        CHECK(genus_enumerate(11, 6, Ring::R).size() == 3);
    }

    TEST_CASE("existence matches enumeration by determinant") {
        for (long p : primes_up_to(30))
            for (int n = 1; n <= 8; ++n)
                for (Ring ring : {Ring::OK, Ring::R}) {
                    if (ring == Ring::R && p % 4 != 3) continue;
                    auto g = genus_enumerate(p, n, ring);
                    for (const DetClass& d : {trivial_class(p), two(p)}) {
                        bool any = false;
                        for (const auto& s : g) any = any || s.det == d;
                        CHECK(exists_modular(p, n, ring, d) == any);
                    }
                }
    }

    TEST_CASE("R-ring genera split into O_K genera plus the rest") {
        for (long p : primes_up_to(50)) {
            if (p % 4 != 3) continue;
            for (int n = 2; n <= 8; n += 2) {
                SigmaReport r = sigma_report(p, n);
                REQUIRE(r.sigma2.has_value());
                CHECK(static_cast<long>(genus_enumerate(p, n, Ring::R).size()) == r.sigma1 + *r.sigma2);
                CHECK(r.total == r.sigma1 + *r.sigma2);
            }
        }
    }

    TEST_CASE("enumerated symbols have existing local data and consistent determinants") {
        for (long p : primes_up_to(30))
            for (int n = 2; n <= 8; n += 2)
                for (Ring ring : {Ring::OK, Ring::R}) {
                    if (ring == Ring::R && p % 4 != 3) continue;
                    for (const auto& s : genus_enumerate(p, n, ring)) {
                        if (p != 2) CHECK(s.at_p.variant == LocalLabel::ModularP);
                        bool det_ok = s.det.is_trivial() || s.det == two(p);
                        CHECK(det_ok);
                        bool norm_ok = s.norm == p || s.norm == 2 * p;
                        CHECK(norm_ok);
                        if (ring == Ring::OK)
                            CHECK(std::holds_alternative<LocalClassLabel>(s.at_2));
                        else
                            CHECK(std::holds_alternative<R2Class>(s.at_2));
                    }
                }
    }

    TEST_CASE("sigma examples") {
        CHECK_FALSE(sigma_report(7, 2).nonempty);
        SigmaReport a = sigma_report(7, 4);
        CHECK(a.sigma1 == 1);
        CHECK(a.sigma2 == 6);
        SigmaReport b = sigma_report(13, 4);
        CHECK(b.sigma1 == 2);
        CHECK_FALSE(b.sigma2.has_value());
        SigmaReport c = sigma_report(11, 6);
        CHECK(c.sigma1 == 0);
        CHECK(c.sigma2 == 3);
        CHECK(sigma_report(2, 4).sigma1 == 2);
        CHECK_THROWS_AS(sigma_report(7, 3), Error);
    }

    TEST_CASE("glue examples") {
        auto g5 = genus_enumerate(5, 2, Ring::OK);
        REQUIRE(g5.size() == 1);
        HermLattice L = glue_lattice(g5[0]);
        CHECK(is_modular(L, 1));
        CHECK(norm_generator(L) == 5);
        CHECK(verify_genus(L, g5[0]).ok);

        auto g3 = genus_enumerate(3, 4, Ring::OK);
        REQUIRE(g3.size() == 1);
        HermLattice M = glue_lattice(g3[0]);
        CHECK(global_det_class(M).is_trivial());
        RingCtx at3 = RingCtx::local_ok(3, 3);
        CHECK(classify_local(at3, HermLattice(at3, M.gram)).variant == LocalLabel::ModularP);

        GenusSymbol bogus = g3[0];
        bogus.n = 2;
        CHECK_THROWS_AS(glue_lattice(bogus), Error);
    }

    TEST_CASE("verify rejects mismatches") {
        auto g = genus_enumerate(5, 2, Ring::OK);
        REQUIRE(!g.empty());
        HermLattice id(RingCtx::global_ok(5), KMatrix::identity(5, 2));
        VerifyResult v = verify_genus(id, g[0]);
        CHECK_FALSE(v.ok);
        CHECK_FALSE(v.reason.empty());
        HermLattice L = glue_lattice(g[0]);
        GenusSymbol wrong = g[0];
        wrong.det = det_class_of(Rational(3), 5);
        CHECK_FALSE(verify_genus(L, wrong).ok);
        GenusSymbol wrong_norm = g[0];
        wrong_norm.norm = 10;
        CHECK_FALSE(verify_genus(L, wrong_norm).ok);
    }

    TEST_CASE("all representatives verify for small p and n") {
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L})
            for (int n : {2, 4, 6})
                for (Ring ring : {Ring::OK, Ring::R}) {
                    if (ring == Ring::R && p % 4 != 3) continue;
                    for (const auto& s : genus_enumerate(p, n, ring)) {
                        HermLattice L = glue_lattice(s);
                        VerifyResult v = verify_genus(L, s);
                        CHECK_MESSAGE(v.ok, s.str() << ": " << v.reason);
                        CHECK(is_positive_definite(L));
                    }
                }
    }

    TEST_CASE("distinct symbols are not confused by verification") {
        auto g = genus_enumerate(7, 4, Ring::R);
        for (size_t i = 0; i < g.size(); ++i) {
            HermLattice L = glue_lattice(g[i]);
            for (size_t j = 0; j < g.size(); ++j) CHECK(verify_genus(L, g[j]).ok == (i == j));
        }
    }
}
