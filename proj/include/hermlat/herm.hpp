#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hermlat/exactnum.hpp"
#include "hermlat/padic.hpp"

namespace hermlat {

enum class RingKind { GlobalOK, GlobalR, LocalOK, LocalR2 };

struct RingCtx {
    RingKind kind = RingKind::GlobalOK;
    long p = 0;
    long ell = 0;  // 0 for global contexts
    int precision = 64;
    std::optional<LocalQuadAlg> alg;

    static RingCtx global_ok(long p);
    static RingCtx global_r(long p);
    static RingCtx local_ok(long p, long ell, int precision = 64);
    static RingCtx local_r2(long p, int precision = 64);

    bool is_local() const { return kind == RingKind::LocalOK || kind == RingKind::LocalR2; }
    bool uses_r() const { return kind == RingKind::GlobalR || kind == RingKind::LocalR2; }
    std::string str() const;
};

enum class Tag { R, OK };

const char* tag_name(Tag t);

// Lattice spanned by tag_i * e_i, where e_i are the rows of basis (ambient
// coordinates) and gram holds phi(e_i, e_j).
struct HermLattice {
    RingCtx ctx;
    KMatrix gram;
    std::vector<Tag> tags;
    KMatrix basis;

    HermLattice() = default;
    HermLattice(RingCtx c, KMatrix g);
    HermLattice(RingCtx c, KMatrix g, std::vector<Tag> t);
    HermLattice(RingCtx c, KMatrix g, std::vector<Tag> t, KMatrix b);

    int n() const { return gram.rows(); }
    long p() const { return ctx.p; }
    void validate() const;
};

// Valuation of x at ell: in the uniformizer when ell ramifies, content in O_K otherwise.
long kval(const KElem& x, long ell);
// Membership tests; ell == 0 means globally.
bool in_ok(const KElem& x, long ell);
bool in_r(const KElem& x, long ell);
// Coefficient c is admissible for a vector of tag `vec` on a coordinate of tag `coord`.
bool coeff_ok(const KElem& c, Tag vec, Tag coord, long ell);

struct TaggedBasis {
    KMatrix rows;
    std::vector<Tag> tags;
};

bool lattice_contains(const TaggedBasis& big, const TaggedBasis& small, long ell);
bool lattice_equal(const TaggedBasis& x, const TaggedBasis& y, long ell);
TaggedBasis tagged_basis(const HermLattice& L);

enum class DualKind { Star, Vee };

HermLattice dual_gram(const HermLattice& L, DualKind kind);
DualKind natural_dual(const RingCtx& ctx);

struct IdealVal {
    long prime = 0;
    long valuation = 0;  // uniformizer units when ramified
    bool ramified = false;
    bool operator==(const IdealVal& o) const {
        return prime == o.prime && valuation == o.valuation && ramified == o.ramified;
    }
    std::string str() const;
};

struct Ideals {
    IdealVal scale;
    IdealVal norm;
};

// Local ideals at ctx.ell (or at `ell` for global lattices).
Ideals ideals(const HermLattice& L);
Ideals ideals_at(const HermLattice& L, long ell);
// Positive generator g of the global norm ideal g*O_K (values phi(x,x) span gZ).
Rational norm_generator(const HermLattice& L);

// a = exponent of sqrt(-p); checks (sqrt(-p))^a * L^dual = L.
bool is_modular(const HermLattice& L, int a);
bool is_positive_definite(const HermLattice& L);
DetClass global_det_class(const HermLattice& L);
bool is_integral(const HermLattice& L);

// Basis change by rows of T: the lattice spanned by T*basis with the given tags.
HermLattice transform(const HermLattice& L, const KMatrix& T, std::vector<Tag> tags);

}  // namespace hermlat
