#include "hermlat/localclass.hpp"

#include <algorithm>

#include "hermlat/symbols.hpp"

namespace hermlat {

namespace {

const std::pair<LocalLabel, const char*> kLabelNames[] = {
    {LocalLabel::SelfDualUnramified, "SelfDualUnramified"},
    {LocalLabel::ModularP, "ModularP"},
    {LocalLabel::RP_unique, "RP_unique"},
    {LocalLabel::RP_normH, "RP_normH"},
    {LocalLabel::RP_norm2, "RP_norm2"},
    {LocalLabel::RU_normal_plus, "RU_normal_plus"},
    {LocalLabel::RU_normal_mixed, "RU_normal_mixed"},
    {LocalLabel::RU_subnormal, "RU_subnormal"},
};

KMatrix hyperbolic(long p, const KElem& x) {
    KMatrix h(p, 2, 2);
    h(0, 1) = x;
    h(1, 0) = x.conj();
    return h;
}

KMatrix plane(long p, const Rational& a, const KElem& x, const Rational& b) {
    KMatrix h(p, 2, 2);
    h(0, 0) = KElem(p, a);
    h(0, 1) = x;
    h(1, 0) = x.conj();
    h(1, 1) = KElem(p, b);
    return h;
}

// sign s with s = (-1)^k  <=>  d is in the class of (-1)^k
int det_sign(const Rational& d, long p, long ell) { return hilbert(d, Rational(-p), ell); }

}  // namespace

const char* label_name(LocalLabel l) {
    for (auto& [k, v] : kLabelNames)
        if (k == l) return v;
    return "?";
}

LocalLabel parse_label(const std::string& s) {
    for (auto& [k, v] : kLabelNames)
        if (s == v) return k;
    throw Error(ErrorCode::InvalidInput, "unknown local label '" + s + "'");
}

std::string LocalClassLabel::str() const { return std::string(label_name(variant)) + "(n=" + std::to_string(n) + ")"; }

JordanForm jordan_reduce(const KMatrix& gram, long ell) {
    int n = gram.rows();
    long p = gram.p();
    KMatrix G = gram;
    KMatrix T = KMatrix::identity(p, n);
    std::vector<int> rest(n);
    for (int i = 0; i < n; ++i) rest[i] = i;
    JordanForm out;
    std::vector<std::vector<KElem>> rows;
    while (!rest.empty()) {
        long best = kInfVal;
        int bi = -1, bj = -1;
        for (size_t x = 0; x < rest.size(); ++x) {
            long v = kval(G(rest[x], rest[x]), ell);
            if (v < best) {
                best = v;
                bi = bj = static_cast<int>(x);
            }
        }
        for (size_t x = 0; x < rest.size(); ++x)
            for (size_t y = x + 1; y < rest.size(); ++y) {
                long v = kval(G(rest[x], rest[y]), ell);
                if (v < best) {
                    best = v;
                    bi = static_cast<int>(x);
                    bj = static_cast<int>(y);
                }
            }
        if (bi < 0) throw Error(ErrorCode::SingularGram, "degenerate gram in reduction");
        std::vector<int> piv = bi == bj ? std::vector<int>{rest[bi]} : std::vector<int>{rest[bi], rest[bj]};
        KMatrix A = G.submatrix(piv, piv);
        KMatrix Ainv = A.inverse();
        std::vector<int> others;
        for (int r : rest)
            if (std::find(piv.begin(), piv.end(), r) == piv.end()) others.push_back(r);
        // e_k <- e_k - sum_l c_l e_l with phi(e_l, e_k') = 0
        std::vector<std::vector<KElem>> cs;
        for (int k : others) {
            std::vector<KElem> c(piv.size(), KElem(p, 0));
            for (size_t l = 0; l < piv.size(); ++l) {
                KElem s(p, 0);
                for (size_t m = 0; m < piv.size(); ++m) s += Ainv(l, m) * G(piv[m], k);
                c[l] = s.conj();
            }
            for (int j = 0; j < n; ++j) {
                KElem s = T(k, j);
                for (size_t l = 0; l < piv.size(); ++l) s -= c[l] * T(piv[l], j);
                T(k, j) = s;
            }
            cs.push_back(c);
        }
        // G <- E G E^dagger for the elimination E, applied to rows then columns
        for (size_t x = 0; x < others.size(); ++x)
            for (int j = 0; j < n; ++j) {
                KElem s = G(others[x], j);
                for (size_t l = 0; l < piv.size(); ++l) s -= cs[x][l] * G(piv[l], j);
                G(others[x], j) = s;
            }
        for (size_t x = 0; x < others.size(); ++x)
            for (int i = 0; i < n; ++i) {
                KElem s = G(i, others[x]);
                for (size_t l = 0; l < piv.size(); ++l) s -= G(i, piv[l]) * cs[x][l].conj();
                G(i, others[x]) = s;
            }
        out.blocks.push_back(JordanBlock{A, best});
        for (int r : piv) {
            std::vector<KElem> row(n);
            for (int j = 0; j < n; ++j) row[j] = T(r, j);
            rows.push_back(row);
        }
        rest = others;
    }
    KMatrix R(p, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R(i, j) = rows[i][j];
    out.transform = R;
    return out;
}

int dyadic_unit_sign(const Rational& d, long p) {
    Rational u = d;
    long v = vq(d, 2);
    for (long k = 0; k < v; ++k) u /= 2;
    for (long k = 0; k > v; --k) u *= 2;
    return hilbert(u, Rational(-p), 2);
}

LocalClassLabel classify_local(const RingCtx& ctx, const HermLattice& G) {
    if (ctx.kind != RingKind::LocalOK) throw Error(ErrorCode::InvalidInput, "classify_local needs a local O_K context");
    long p = ctx.p, ell = ctx.ell;
    HermLattice L(ctx, G.gram);
    L.validate();
    int n = L.n();
    int s = artin(p, ell);
    if (s != 0) {
        if (!is_modular(L, 0)) throw Error(ErrorCode::NotSelfDual, "not self-dual at " + std::to_string(ell));
        return {LocalLabel::SelfDualUnramified, n};
    }
    KElem det = L.gram.det();
    if (!det.is_rational()) throw Error(ErrorCode::NonHermitian, "determinant is not rational");
    if (ell == p && p != 2) {
        if (!is_modular(L, 1)) throw Error(ErrorCode::NotModular, "not sqrt(-p)-modular at p");
        if (n % 2) throw Error(ErrorCode::Inconsistent, "modular lattice of odd rank");
        Ideals id = ideals(L);
        if (id.norm.valuation != 2) throw Error(ErrorCode::Inconsistent, "modular lattice without norm (p)");
        return {LocalLabel::ModularP, n};
    }
    Ideals id = ideals(L);
    int m = n / 2;
    if (p == 2) {
        if (!is_modular(L, 1)) throw Error(ErrorCode::NotModular, "not sqrt(-2)-modular at 2");
        if (n % 2) throw Error(ErrorCode::Inconsistent, "modular lattice of odd rank");
        // dM2 = det / (-2)^(m-1)
        Rational d = det.a;
        for (int k = 0; k < m - 1; ++k) d /= -2;
        if (vq(d, 2) != 1) throw Error(ErrorCode::Inconsistent, "unexpected 2-adic determinant");
        int sign = dyadic_unit_sign(d, 2);
        if (id.norm.valuation == 4) {
            if (sign != -1) throw Error(ErrorCode::Inconsistent, "norm 4 with determinant +2");
            return {LocalLabel::RP_normH, n};
        }
        if (id.norm.valuation != 2) throw Error(ErrorCode::Inconsistent, "unexpected norm at 2");
        return {sign == 1 ? LocalLabel::RP_unique : LocalLabel::RP_norm2, n};
    }
    // p = 1 mod 4 at 2
    if (!is_modular(L, 0)) throw Error(ErrorCode::NotSelfDual, "not self-dual at 2");
    if (n % 2) throw Error(ErrorCode::InvalidInput, "odd rank self-dual lattices at 2 are not labelled");
    JordanForm jf = jordan_reduce(L.gram, ell);
    bool has_line = false;
    for (const auto& b : jf.blocks)
        if (b.gram.rows() == 1) has_line = true;
    bool subnormal = id.norm.valuation > 0;
    if (subnormal == has_line) throw Error(ErrorCode::Inconsistent, "reduction and norm ideal disagree");
    Rational d = det.a;
    if (m % 2 == 0) d = -d;  // dM2 = det * (-1)^(m-1)
    int sign = det_sign(d, p, 2);
    if (subnormal) {
        if (sign != -1) throw Error(ErrorCode::Inconsistent, "subnormal with det (-1)^(m-1)");
        return {LocalLabel::RU_subnormal, n};
    }
    return {sign == 1 ? LocalLabel::RU_normal_plus : LocalLabel::RU_normal_mixed, n};
}

HermLattice standard_gram(const LocalClassLabel& label, const RingCtx& ctx) {
    if (ctx.kind != RingKind::LocalOK) throw Error(ErrorCode::Inconsistent, "standard_gram needs a local O_K context");
    long p = ctx.p, ell = ctx.ell;
    int n = label.n;
    if (n < 1) throw Error(ErrorCode::Inconsistent, "rank must be positive");
    auto need_even = [&] {
        if (n % 2) throw Error(ErrorCode::Inconsistent, std::string(label_name(label.variant)) + " needs even rank");
    };
    std::vector<KMatrix> blocks;
    KElem one(p, 1), pi = KElem::sqrt_neg_p(p);
    switch (label.variant) {
        case LocalLabel::SelfDualUnramified:
            if (artin(p, ell) == 0) throw Error(ErrorCode::Inconsistent, "ell ramifies");
            blocks.push_back(KMatrix::identity(p, n));
            break;
        case LocalLabel::ModularP:
            need_even();
            if (ell != p || p == 2) throw Error(ErrorCode::Inconsistent, "ModularP lives at odd p");
            for (int k = 0; k < n / 2; ++k) blocks.push_back(hyperbolic(p, pi));
            break;
        case LocalLabel::RU_normal_plus:
        case LocalLabel::RU_normal_mixed:
        case LocalLabel::RU_subnormal:
            need_even();
            if (ell != 2 || p % 4 != 1) throw Error(ErrorCode::Inconsistent, "RU labels need p = 1 mod 4 at 2");
            if (label.variant == LocalLabel::RU_subnormal) {
                for (int k = 0; k < n / 2; ++k) blocks.push_back(hyperbolic(p, one));
            } else {
                Rational second = label.variant == LocalLabel::RU_normal_plus ? 1 : -1;
                blocks.push_back(KMatrix::diag(p, {Rational(1), second}));
                for (int k = 1; k < n / 2; ++k) blocks.push_back(hyperbolic(p, one));
            }
            break;
        case LocalLabel::RP_unique:
        case LocalLabel::RP_normH:
        case LocalLabel::RP_norm2:
            need_even();
            if (p != 2 || ell != 2) throw Error(ErrorCode::Inconsistent, "RP labels need p = 2");
            if (label.variant == LocalLabel::RP_unique)
                blocks.push_back(plane(p, -2, pi, 4));
            else if (label.variant == LocalLabel::RP_norm2)
                blocks.push_back(plane(p, -2, pi, 0));
            else
                blocks.push_back(hyperbolic(p, pi));
            for (int k = 1; k < n / 2; ++k) blocks.push_back(hyperbolic(p, pi));
            break;
    }
    HermLattice L(ctx, KMatrix::block_diag(blocks));
    // the unique/norm2 split is fixed by the determinant; reject labels whose rank forces the other one
    if (label.variant != LocalLabel::SelfDualUnramified && label.variant != LocalLabel::ModularP) {
        if (classify_local(ctx, L) != label) throw Error(ErrorCode::Inconsistent, "label inconsistent with rank");
    }
    return L;
}

std::set<LocalLabel> local_exists(const RingCtx& ctx, int n, const Rational& d) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "rank must be positive");
    if (sgn(d) == 0) throw Error(ErrorCode::InvalidInput, "determinant must be nonzero");
    long p = ctx.p, ell = ctx.ell;
    int s = artin(p, ell);
    int sign = det_sign(d, p, ell);
    int m = n / 2;
    int even_sign = hilbert(Rational(m % 2 ? -1 : 1), Rational(-p), ell);  // class of (-1)^m
    if (s == 1) return {LocalLabel::SelfDualUnramified};
    if (s == -1) return sign == 1 ? std::set<LocalLabel>{LocalLabel::SelfDualUnramified} : std::set<LocalLabel>{};
    if (ell == p && p != 2) {
        if (n % 2 || sign != even_sign) return {};
        return {LocalLabel::ModularP};
    }
    if (n % 2) {
        if (p == 2) return {};
        throw Error(ErrorCode::InvalidInput, "odd rank self-dual lattices at 2 are not labelled");
    }
    if (p == 2) {
        if (sign == -even_sign) return {LocalLabel::RP_unique};
        return {LocalLabel::RP_normH, LocalLabel::RP_norm2};
    }
    if (sign == -even_sign) return {LocalLabel::RU_normal_plus};
    return {LocalLabel::RU_normal_mixed, LocalLabel::RU_subnormal};
}

}  // namespace hermlat
