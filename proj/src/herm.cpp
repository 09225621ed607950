#include "hermlat/herm.hpp"

#include <algorithm>

#include "hermlat/symbols.hpp"

namespace hermlat {

RingCtx RingCtx::global_ok(long p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    RingCtx c;
    c.kind = RingKind::GlobalOK;
    c.p = p;
    return c;
}

RingCtx RingCtx::global_r(long p) {
    if (!is_prime(p) || p % 4 != 3)
        throw Error(ErrorCode::InvalidInput, "Z[sqrt(-p)] differs from O_K only for p = 3 mod 4");
    RingCtx c;
    c.kind = RingKind::GlobalR;
    c.p = p;
    return c;
}

RingCtx RingCtx::local_ok(long p, long ell, int precision) {
    RingCtx c;
    c.kind = RingKind::LocalOK;
    c.p = p;
    c.ell = ell;
    c.precision = precision;
    c.alg = make_local_alg(p, ell, precision);
    return c;
}

RingCtx RingCtx::local_r2(long p, int precision) {
    if (!is_prime(p) || p % 4 != 3) throw Error(ErrorCode::InvalidInput, "R_2 differs from O_K2 only for p = 3 mod 4");
    RingCtx c;
    c.kind = RingKind::LocalR2;
    c.p = p;
    c.ell = 2;
    c.precision = precision;
    c.alg = make_local_alg(p, 2, precision);
    return c;
}

std::string RingCtx::str() const {
    switch (kind) {
        case RingKind::GlobalOK: return "O_K(p=" + std::to_string(p) + ")";
        case RingKind::GlobalR: return "Z[sqrt(-" + std::to_string(p) + ")]";
        case RingKind::LocalOK: return "O_K(p=" + std::to_string(p) + ") at " + std::to_string(ell);
        case RingKind::LocalR2: return "R_2(p=" + std::to_string(p) + ")";
    }
    return "?";
}

const char* tag_name(Tag t) { return t == Tag::R ? "R" : "OK"; }

HermLattice::HermLattice(RingCtx c, KMatrix g)
    : ctx(std::move(c)), gram(std::move(g)), tags(gram.rows(), Tag::OK), basis(KMatrix::identity(ctx.p, gram.rows())) {}

HermLattice::HermLattice(RingCtx c, KMatrix g, std::vector<Tag> t)
    : ctx(std::move(c)), gram(std::move(g)), tags(std::move(t)), basis(KMatrix::identity(ctx.p, gram.rows())) {}

HermLattice::HermLattice(RingCtx c, KMatrix g, std::vector<Tag> t, KMatrix b)
    : ctx(std::move(c)), gram(std::move(g)), tags(std::move(t)), basis(std::move(b)) {}

void HermLattice::validate() const {
    if (gram.rows() != gram.cols() || gram.rows() == 0) throw Error(ErrorCode::InvalidInput, "gram must be square");
    if (static_cast<int>(tags.size()) != gram.rows()) throw Error(ErrorCode::InvalidInput, "one tag per basis vector");
    if (!gram.is_hermitian()) throw Error(ErrorCode::NonHermitian, "gram is not hermitian");
    if (!ctx.uses_r())
        for (Tag t : tags)
            if (t != Tag::OK) throw Error(ErrorCode::InvalidInput, "R tags need an R context");
    if (gram.det().is_zero()) throw Error(ErrorCode::SingularGram, "gram is singular");
}

long kval(const KElem& x, long ell) {
    if (x.is_zero()) return kInfVal;
    int s = artin(x.p, ell);
    if (s == 0) return vq(x.norm(), ell);
    if (s == -1) return vq(x.norm(), ell) / 2;
    auto [c, d] = o_coords(x);
    return std::min(vq(c, ell), vq(d, ell));
}

bool in_ok(const KElem& x, long ell) {
    auto [c, d] = o_coords(x);
    return is_integral_at(c, ell) && is_integral_at(d, ell);
}

namespace {

bool conductor_two(long p, long ell) { return p % 4 == 3 && (ell == 0 || ell == 2); }

}  // namespace

bool in_r(const KElem& x, long ell) {
    if (!conductor_two(x.p, ell)) return in_ok(x, ell);
    auto [c, d] = o_coords(x);
    return is_integral_at(c, ell) && is_integral_at(d / 2, ell);
}

bool coeff_ok(const KElem& c, Tag vec, Tag coord, long ell) {
    if (coord == Tag::OK) return in_ok(c, ell);
    if (vec == Tag::R) return in_r(c, ell);
    if (conductor_two(c.p, ell)) return in_ok(Rational(1, 2) * c, ell);
    return in_ok(c, ell);
}

bool lattice_contains(const TaggedBasis& big, const TaggedBasis& small, long ell) {
    KMatrix coords = small.rows * big.rows.inverse();
    for (int i = 0; i < coords.rows(); ++i)
        for (int j = 0; j < coords.cols(); ++j)
            if (!coeff_ok(coords(i, j), small.tags[i], big.tags[j], ell)) return false;
    return true;
}

bool lattice_equal(const TaggedBasis& x, const TaggedBasis& y, long ell) {
    return lattice_contains(x, y, ell) && lattice_contains(y, x, ell);
}

TaggedBasis tagged_basis(const HermLattice& L) { return TaggedBasis{L.basis, L.tags}; }

DualKind natural_dual(const RingCtx& ctx) { return ctx.uses_r() ? DualKind::Vee : DualKind::Star; }

HermLattice dual_gram(const HermLattice& L, DualKind kind) {
    int n = L.n();
    long p = L.p();
    KMatrix ginv = L.gram.inverse();
    std::vector<Rational> alpha(n, Rational(1));
    std::vector<Tag> tags(n, Tag::OK);
    if (kind == DualKind::Vee) {
        for (int i = 0; i < n; ++i) {
            tags[i] = L.tags[i];
            if (L.tags[i] == Tag::OK && conductor_two(p, L.ctx.ell)) alpha[i] = 2;
        }
    }
    KMatrix C = KMatrix::diag(p, alpha) * ginv;
    return HermLattice(L.ctx, congruent(C, L.gram), tags, C * L.basis);
}

std::string IdealVal::str() const {
    std::string u = ramified ? "pi" : std::to_string(prime);
    return "(" + u + ")^" + std::to_string(valuation);
}

namespace {

std::vector<Rational> norm_generators(const HermLattice& L) {
    std::vector<Rational> gens;
    long p = L.p();
    int n = L.n();
    for (int i = 0; i < n; ++i) gens.push_back(L.gram(i, i).a);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const KElem& g = L.gram(i, j);
            KElem w = KElem::omega(p);
            if (L.tags[i] == Tag::R && L.tags[j] == Tag::R && conductor_two(p, L.ctx.ell)) w = KElem(p, 2) * w;
            gens.push_back(g.trace());
            gens.push_back((w * g).trace());
        }
    return gens;
}

}  // namespace

Ideals ideals_at(const HermLattice& L, long ell) {
    bool ram = artin(L.p(), ell) == 0;
    long e = ram ? 2 : 1;
    Ideals out;
    out.scale = IdealVal{ell, kInfVal, ram};
    out.norm = IdealVal{ell, kInfVal, ram};
    for (int i = 0; i < L.n(); ++i)
        for (int j = 0; j < L.n(); ++j) out.scale.valuation = std::min(out.scale.valuation, kval(L.gram(i, j), ell));
    for (const Rational& q : norm_generators(L)) {
        long v = vq(q, ell);
        if (v < kInfVal) out.norm.valuation = std::min(out.norm.valuation, e * v);
    }
    if (out.norm.valuation < out.scale.valuation) throw Error(ErrorCode::Inconsistent, "norm exceeds scale");
    return out;
}

Ideals ideals(const HermLattice& L) {
    if (!L.ctx.is_local()) throw Error(ErrorCode::InvalidInput, "ideals() needs a local context; use ideals_at");
    return ideals_at(L, L.ctx.ell);
}

Rational norm_generator(const HermLattice& L) {
    Int num = 0, den = 1;
    std::vector<Rational> gens = norm_generators(L);
    for (const Rational& q : gens) den = lcm(den, q.get_den());
    for (const Rational& q : gens) num = gcd(num, Int(q.get_num() * (den / q.get_den())));
    if (num == 0) throw Error(ErrorCode::SingularGram, "zero norm ideal");
    return make_rational(abs(num), den);
}

bool is_modular(const HermLattice& L, int a) {
    // Coordinates of s * L^dual in L are s * diag(alpha) * G^-1, and of L in s * L^dual the inverse.
    int n = L.n();
    long p = L.p();
    KElem s(p, 1);
    KElem pi = KElem::sqrt_neg_p(p);
    for (int k = 0; k < a; ++k) s *= pi;
    for (int k = 0; k > a; --k) s /= pi;
    bool vee = natural_dual(L.ctx) == DualKind::Vee;
    std::vector<Tag> dtags(n, Tag::OK);
    std::vector<Rational> alpha(n, Rational(1));
    for (int i = 0; i < n; ++i)
        if (vee) {
            dtags[i] = L.tags[i];
            if (L.tags[i] == Tag::OK && conductor_two(p, L.ctx.ell)) alpha[i] = 2;
        }
    KMatrix to_l = s * (KMatrix::diag(p, alpha) * L.gram.inverse());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!coeff_ok(to_l(i, j), dtags[i], L.tags[j], L.ctx.ell)) return false;
    KMatrix from_l = to_l.inverse();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!coeff_ok(from_l(i, j), L.tags[i], dtags[j], L.ctx.ell)) return false;
    return true;
}

bool is_positive_definite(const HermLattice& L) {
    for (int k = 1; k <= L.n(); ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        KElem m = L.gram.submatrix(idx, idx).det();
        if (!m.is_rational()) throw Error(ErrorCode::NonHermitian, "leading minor is not rational");
        if (sgn(m.a) <= 0) return false;
    }
    return true;
}

DetClass global_det_class(const HermLattice& L) {
    KElem d = L.gram.det();
    if (!d.is_rational()) throw Error(ErrorCode::NonHermitian, "determinant is not rational");
    if (sgn(d.a) <= 0) throw Error(ErrorCode::InvalidInput, "determinant must be positive");
    return det_class_of(d.a, L.p());
}

bool is_integral(const HermLattice& L) {
    long ell = L.ctx.ell;
    for (int i = 0; i < L.n(); ++i)
        for (int j = 0; j < L.n(); ++j) {
            const KElem& g = L.gram(i, j);
            if (!L.ctx.uses_r()) {
                if (!in_ok(g, ell)) return false;
            } else if (L.tags[i] == Tag::R && L.tags[j] == Tag::R) {
                if (!in_r(g, ell)) return false;
            } else if (!coeff_ok(g, Tag::OK, Tag::R, ell)) {
                return false;
            }
        }
    return true;
}

HermLattice transform(const HermLattice& L, const KMatrix& T, std::vector<Tag> tags) {
    return HermLattice(L.ctx, congruent(T, L.gram), std::move(tags), T * L.basis);
}

}  // namespace hermlat
