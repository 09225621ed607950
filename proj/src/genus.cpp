#include "hermlat/genus.hpp"

#include <algorithm>
#include <functional>

#include "fp_linalg.hpp"
#include "hermlat/symbols.hpp"

namespace hermlat {

namespace {

Rational rpow(long b, long e) {
    Rational r = 1;
    for (long k = 0; k < e; ++k) r *= b;
    return r;
}

bool ok_ring_feasible(long p, int n) { return n >= 2 && n % 2 == 0 && (p % 4 != 3 || n % 4 == 0); }

Rational ok_norm(long p, LocalLabel at2) {
    if (p == 2) return at2 == LocalLabel::RP_normH ? 4 : 2;
    return at2 == LocalLabel::RU_subnormal ? 2 * p : p;
}

KMatrix plane(long p, const Rational& a, const KElem& x, const Rational& b) {
    KMatrix h(p, 2, 2);
    h(0, 0) = KElem(p, a);
    h(0, 1) = x;
    h(1, 0) = x.conj();
    h(1, 1) = KElem(p, b);
    return h;
}

// Even unimodular rank 4 gram over Z[sqrt(-p)], p = 1 mod 4.
KMatrix even4(long p) {
    KElem beta = p % 8 == 5 ? KElem::sqrt_neg_p(p) : KElem(p, 1, 2);
    Rational c = p % 8 == 5 ? make_rational(3 * p + 1, 4) : Rational(1 + 3 * p);
    KMatrix g(p, 4, 4);
    for (int i = 0; i < 4; ++i) g(i, i) = KElem(p, 2);
    g(0, 1) = g(1, 0) = g(1, 2) = g(2, 1) = KElem(p, 1);
    g(2, 3) = beta;
    g(3, 2) = beta.conj();
    g(3, 3) = KElem(p, c);
    return g;
}

long residue_mod_pi(const KElem& x, long p) { return mod_long(x.a, p); }

fp::Mat reduce_form(const KMatrix& g, long p) {
    int n = g.rows();
    fp::Mat b(n, fp::Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = residue_mod_pi(g(i, j), p);
    return b;
}

// Maximal totally isotropic subspace of a nondegenerate symmetric form over F_p, p odd.
fp::Mat lagrangian_odd(const fp::Mat& B, long p) {
    int n = static_cast<int>(B.size());
    fp::Mat basis;  // current complement, rows
    for (int i = 0; i < n; ++i) {
        fp::Vec e(n, 0);
        e[i] = 1;
        basis.push_back(e);
    }
    fp::Mat W;
    while (!basis.empty()) {
        int k = static_cast<int>(basis.size());
        // orthogonal basis of the complement
        fp::Mat u = basis;
        std::vector<long> a(k);
        for (int i = 0; i < k; ++i) {
            a[i] = fp::dot(u[i], B, u[i], p);
            if (a[i] == 0) {
                int j = i + 1;
                for (; j < k; ++j)
                    if (fp::dot(u[i], B, u[j], p) != 0) break;
                if (j == k) throw Error(ErrorCode::ConstructionFailed, "degenerate residue form");
                long c = fp::dot(u[j], B, u[j], p) == 0 ? 1 : 0;
                bool done = false;
                for (long t = 0; t < p && !done; ++t) {
                    fp::Vec v(n);
                    for (int m = 0; m < n; ++m) v[m] = fp::md(u[i][m] + (t + c) * u[j][m], p);
                    if (fp::dot(v, B, v, p) != 0) {
                        u[i] = v;
                        done = true;
                    }
                }
                if (!done) throw Error(ErrorCode::ConstructionFailed, "no anisotropic vector");
                a[i] = fp::dot(u[i], B, u[i], p);
            }
            long ainv = fp::inv(a[i], p);
            for (int j = i + 1; j < k; ++j) {
                long f = fp::md(fp::dot(u[j], B, u[i], p) * ainv, p);
                for (int m = 0; m < n; ++m) u[j][m] = fp::md(u[j][m] - f * u[i][m], p);
            }
        }
        if (k == 1) throw Error(ErrorCode::ConstructionFailed, "odd-dimensional residue form");
        fp::Vec iso;
        int lim = std::min(k, 3);
        // lexicographic search x u_0 + y u_1 (+ z u_2), leading nonzero coordinate 1
        std::vector<long> coeff(lim, 0);
        bool found = false;
        std::function<void(int)> rec = [&](int pos) {
            if (found) return;
            if (pos == lim) {
                bool nz = false;
                for (long c : coeff) nz = nz || c;
                if (!nz) return;
                long s = 0;
                for (int i = 0; i < lim; ++i) s = fp::md(s + a[i] * coeff[i] % p * coeff[i], p);
                if (s == 0) {
                    iso.assign(n, 0);
                    for (int i = 0; i < lim; ++i)
                        for (int m = 0; m < n; ++m) iso[m] = fp::md(iso[m] + coeff[i] * u[i][m], p);
                    found = true;
                }
                return;
            }
            for (long c = 0; c < p && !found; ++c) {
                coeff[pos] = c;
                rec(pos + 1);
            }
            coeff[pos] = 0;
        };
        rec(0);
        if (!found) throw Error(ErrorCode::ConstructionFailed, "no isotropic vector in the residue form");
        // partner with B(iso, w) = 1
        fp::Vec w;
        for (const auto& cand : u) {
            long b = fp::dot(iso, B, cand, p);
            if (b) {
                w = cand;
                long bi = fp::inv(b, p);
                for (auto& x : w) x = fp::md(x * bi, p);
                break;
            }
        }
        long q = fp::dot(w, B, w, p);
        long half = fp::md(q * fp::inv(2, p), p);
        for (int m = 0; m < n; ++m) w[m] = fp::md(w[m] - half * iso[m], p);
        W.push_back(iso);
        // complement of the plane span(iso, w) inside span(u)
        fp::Mat next;
        for (const auto& v : u) {
            long x = fp::dot(v, B, w, p), y = fp::dot(v, B, iso, p);
            fp::Vec r(n);
            for (int m = 0; m < n; ++m) r[m] = fp::md(v[m] - x * iso[m] - y * w[m], p);
            next.push_back(r);
        }
        fp::rref(next, p);
        basis = next;
    }
    return W;
}

// Totally isotropic subspace of dimension n/2 over F_2 on which B(v,v) (and q, if given) vanish.
fp::Mat lagrangian_two(const fp::Mat& B, const std::vector<long>* q) {
    int n = static_cast<int>(B.size());
    int target = n / 2;
    auto qv = [&](const fp::Vec& v) {
        long s = 0;
        for (int i = 0; i < n; ++i) s += (*q)[i] * v[i];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += B[i][j] * v[i] * v[j];
        return s % 2;
    };
    std::vector<fp::Vec> cands;
    for (long mask = 1; mask < (1L << n); ++mask) {
        fp::Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> (n - 1 - i)) & 1;
        if (fp::dot(v, B, v, 2) != 0) continue;
        if (q && qv(v) != 0) continue;
        cands.push_back(v);
    }
    fp::Mat W;
    std::function<bool(size_t)> dfs = [&](size_t from) {
        if (static_cast<int>(W.size()) == target) return true;
        for (size_t c = from; c < cands.size(); ++c) {
            const auto& v = cands[c];
            bool orth = true;
            for (const auto& w : W)
                if (fp::dot(v, B, w, 2) != 0) orth = false;
            if (!orth) continue;
            fp::Mat t = W;
            t.push_back(v);
            if (fp::rank(t, 2) != static_cast<int>(t.size())) continue;
            W.push_back(v);
            if (dfs(c + 1)) return true;
            W.pop_back();
        }
        return false;
    };
    if (!dfs(0)) throw Error(ErrorCode::ConstructionFailed, "no Lagrangian in the residue form at 2");
    return W;
}

// Lattice pi*L0 + lift(W): rows in L0 coordinates and their tags.
std::pair<KMatrix, std::vector<Tag>> lagrangian_preimage(long p, const std::vector<Tag>& tags, fp::Mat W) {
    int n = static_cast<int>(tags.size());
    std::vector<int> piv = fp::rref(W, p);
    KMatrix B(p, n, n);
    std::vector<Tag> out;
    std::vector<bool> is_piv(n, false);
    int row = 0;
    for (size_t k = 0; k < piv.size(); ++k) {
        int c = piv[k];
        is_piv[c] = true;
        for (int j = 0; j < n; ++j) {
            long v = W[k][j];
            if (tags[c] == Tag::OK && tags[j] == Tag::R && v % 2) v += p;
            B(row, j) = KElem(p, v);
        }
        out.push_back(tags[c]);
        ++row;
    }
    for (int j = 0; j < n; ++j) {
        if (is_piv[j]) continue;
        B(row, j) = KElem::sqrt_neg_p(p);
        out.push_back(tags[j]);
        ++row;
    }
    return {B, out};
}

bool symbol_listed(const GenusSymbol& s) {
    std::vector<GenusSymbol> all = genus_enumerate(s.p, s.n, s.ring);
    return std::find(all.begin(), all.end(), s) != all.end();
}

}  // namespace

const char* ring_name(Ring r) { return r == Ring::OK ? "ok" : "r"; }

Ring parse_ring(const std::string& s) {
    if (s == "ok" || s == "OK") return Ring::OK;
    if (s == "r" || s == "R") return Ring::R;
    throw Error(ErrorCode::InvalidInput, "ring must be ok or r");
}

std::string at2_str(const At2Label& a) {
    if (const auto* l = std::get_if<LocalClassLabel>(&a)) return l->str();
    const auto& c = std::get<R2Class>(a);
    return c.label() + " (r=" + std::to_string(c.r) + ", s=" + std::to_string(c.s) +
           ", odd_diag=" + (c.odd_diag ? "true" : "false") + ")";
}

bool GenusSymbol::operator==(const GenusSymbol& o) const {
    return p == o.p && n == o.n && ring == o.ring && det == o.det && at_p == o.at_p && at_2 == o.at_2 &&
           norm == o.norm;
}

std::string GenusSymbol::str() const {
    return std::string("p=") + std::to_string(p) + " n=" + std::to_string(n) + " ring=" + ring_name(ring) +
           " det=" + det.str() + " at_p=" + at_p.str() + " at_2=" + at2_str(at_2) + " norm=" + to_string(norm);
}

bool exists_modular(long p, int n, Ring ring, const DetClass& det) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    if (n < 1) throw Error(ErrorCode::InvalidInput, "rank must be positive");
    if (ring == Ring::R) {
        if (p % 4 != 3) throw Error(ErrorCode::InvalidInput, "Z[sqrt(-p)] = O_K unless p = 3 mod 4; use ring ok");
        if (p % 8 == 7) return n % 4 == 0 && det.is_trivial();
        if (n % 4 == 0) return det.is_trivial();
        if (n % 4 == 2) return det == det_class_of(2, p);
        return false;
    }
    return ok_ring_feasible(p, n) && det.is_trivial();
}

std::vector<GenusSymbol> genus_enumerate(long p, int n, Ring ring) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    if (n < 1) throw Error(ErrorCode::InvalidInput, "rank must be positive");
    std::vector<GenusSymbol> out;
    if (n % 2) return out;
    int m = n / 2;
    if (ring == Ring::OK) {
        Rational d = rpow(p, m);
        std::set<LocalLabel> at_p = local_exists(RingCtx::local_ok(p, p), n, d);
        std::set<LocalLabel> at_2 = local_exists(RingCtx::local_ok(p, 2), n, d);
        if (p != 2 && at_p.empty()) return out;
        for (LocalLabel l2 : at_2) {
            GenusSymbol s;
            s.p = p;
            s.n = n;
            s.ring = Ring::OK;
            s.det = trivial_class(p);
            s.at_p = p == 2 ? LocalClassLabel{l2, n} : LocalClassLabel{*at_p.begin(), n};
            s.at_2 = LocalClassLabel{l2, n};
            s.norm = ok_norm(p, l2);
            out.push_back(s);
        }
        if (!out.empty() && !ok_ring_feasible(p, n)) throw Error(ErrorCode::Inconsistent, "local data disagree with the rank table");
        std::stable_sort(out.begin(), out.end(),
                         [](const GenusSymbol& a, const GenusSymbol& b) { return a.norm < b.norm; });
        return out;
    }
    if (p % 4 != 3) throw Error(ErrorCode::InvalidInput, "Z[sqrt(-p)] = O_K unless p = 3 mod 4; use ring ok");
    RingCtx at_p_ctx = RingCtx::local_ok(p, p);
    for (int s = 0; s <= n; ++s) {
        int r = n - s;
        Rational d = rpow(2, s) * rpow(p, m);
        if (local_exists(at_p_ctx, n, d).count(LocalLabel::ModularP) == 0) continue;
        std::vector<bool> odd_opts;
        if (r % 2) odd_opts = {true};
        else if (r == 0) odd_opts = {false};
        else odd_opts = {false, true};
        for (bool od : odd_opts) {
            GenusSymbol g;
            g.p = p;
            g.n = n;
            g.ring = Ring::R;
            g.det = det_class_of(d, p);
            g.at_p = LocalClassLabel{LocalLabel::ModularP, n};
            g.at_2 = R2Class{r, s, od};
            g.norm = od ? Rational(p) : Rational(2 * p);
            out.push_back(g);
        }
    }
    return out;
}

SigmaReport sigma_report(long p, int n) {
    if (n < 1 || n % 2) throw Error(ErrorCode::InvalidInput, "sigma needs an even positive rank");
    SigmaReport rep;
    rep.p = p;
    rep.n = n;
    std::vector<GenusSymbol> ok = genus_enumerate(p, n, Ring::OK);
    rep.sigma1 = static_cast<long>(ok.size());
    if (p % 4 == 3) {
        std::vector<GenusSymbol> rr = genus_enumerate(p, n, Ring::R);
        rep.total = static_cast<long>(rr.size());
        rep.sigma2 = rep.total - rep.sigma1;
        if (!rr.empty()) rep.forced_det = rr.front().det;
        for (const auto& g : rr)
            if (g.det != rr.front().det) throw Error(ErrorCode::Inconsistent, "determinant not forced");
        if (*rep.sigma2 < 0) throw Error(ErrorCode::Inconsistent, "more O_K genera than R genera");
    } else {
        rep.total = rep.sigma1;
        if (!ok.empty()) rep.forced_det = ok.front().det;
    }
    rep.nonempty = rep.total > 0;
    return rep;
}

HermLattice r2_block_lattice(long p, const R2Class& c) {
    std::vector<KMatrix> blocks;
    std::vector<Tag> tags;
    KMatrix line = KMatrix::diag(p, {Rational(1)});
    KMatrix hyp = plane(p, 2, KElem::sqrt_neg_p(p), make_rational(p + 1, 2));
    int l1 = 0, h = 0;
    if (c.r % 2) {
        l1 = 1;
        h = (c.r - 1) / 2;
    } else if (c.odd_diag && c.r > 0) {
        l1 = 2;
        h = (c.r - 2) / 2;
    } else {
        h = c.r / 2;
    }
    for (int k = 0; k < l1; ++k) {
        blocks.push_back(line);
        tags.push_back(Tag::R);
    }
    for (int k = 0; k < h; ++k) {
        blocks.push_back(hyp);
        tags.push_back(Tag::R);
        tags.push_back(Tag::R);
    }
    for (int k = 0; k < c.s; ++k) {
        blocks.push_back(KMatrix::diag(p, {Rational(2)}));
        tags.push_back(Tag::OK);
    }
    return HermLattice(RingCtx::global_r(p), KMatrix::block_diag(blocks), tags);
}

HermLattice glue_lattice(const GenusSymbol& symbol) {
    long p = symbol.p;
    int n = symbol.n;
    if (!symbol_listed(symbol)) throw Error(ErrorCode::NoSuchGenus, "no genus with symbol " + symbol.str());
    HermLattice L0;
    const std::vector<long>* qptr = nullptr;
    std::vector<long> q;
    if (symbol.ring == Ring::R) {
        L0 = r2_block_lattice(p, std::get<R2Class>(symbol.at_2));
    } else {
        LocalLabel l2 = std::get<LocalClassLabel>(symbol.at_2).variant;
        KMatrix g = KMatrix::identity(p, n);
        if (l2 == LocalLabel::RU_subnormal) {
            std::vector<KMatrix> bl(n / 4, even4(p));
            g = KMatrix::block_diag(bl);
        } else if (l2 == LocalLabel::RP_normH) {
            std::vector<KMatrix> bl(n / 2, plane(p, 2, KElem(p, 1, 1), 2));
            g = KMatrix::block_diag(bl);
            for (int i = 0; i < n; ++i) q.push_back(mod_long(g(i, i).a / 2, 2));
            qptr = &q;
        }
        L0 = HermLattice(RingCtx::global_ok(p), g);
    }
    if (!is_positive_definite(L0)) throw Error(ErrorCode::ConstructionFailed, "start lattice not positive definite");
    fp::Mat B = reduce_form(L0.gram, p);
    if (fp::rank(B, p) != n) throw Error(ErrorCode::ConstructionFailed, "start lattice not unimodular at p");
    fp::Mat W = p == 2 ? lagrangian_two(B, qptr) : lagrangian_odd(B, p);
    if (static_cast<int>(W.size()) != n / 2) throw Error(ErrorCode::ConstructionFailed, "Lagrangian has wrong dimension");
    for (const auto& x : W)
        for (const auto& y : W)
            if (fp::dot(x, B, y, p) != 0) throw Error(ErrorCode::ConstructionFailed, "subspace not isotropic");
    auto [T, tags] = lagrangian_preimage(p, L0.tags, W);
    HermLattice L(L0.ctx, congruent(T, L0.gram), tags, T);
    VerifyResult v = verify_genus(L, symbol);
    if (!v.ok) throw Error(ErrorCode::ConstructionFailed, "representative failed verification: " + v.reason);
    return L;
}

VerifyResult verify_genus(const HermLattice& L, const GenusSymbol& symbol) {
    auto fail = [](std::string r) { return VerifyResult{false, std::move(r)}; };
    long p = symbol.p;
    try {
        if (L.p() != p || L.n() != symbol.n) return fail("shape");
        bool want_r = symbol.ring == Ring::R;
        if (L.ctx.uses_r() != want_r || L.ctx.is_local()) return fail("ring");
        L.validate();
        if (!is_integral(L)) return fail("not_integral");
        if (!is_positive_definite(L)) return fail("not_positive_definite");
        if (global_det_class(L) != symbol.det) return fail("det_class");
        if (!is_modular(L, 1)) return fail("not_modular");
        Rational det = L.gram.det().a;
        for (const Int& part : {Int(det.get_num()), Int(det.get_den())})
            for (auto [ell, e] : factor(part))
                if (ell != p && ell != 2) return fail("not_self_dual_at_" + std::to_string(ell));
        HermLattice Lp(RingCtx::local_ok(p, p), L.gram);
        if (classify_local(RingCtx::local_ok(p, p), Lp) != symbol.at_p) return fail("at_p");
        if (want_r) {
            const auto* want = std::get_if<R2Class>(&symbol.at_2);
            if (!want) return fail("at_2");
            OrderChain chain = OrderChain::r2(p);
            std::vector<KVec> gens;
            std::vector<int> idx;
            for (int i = 0; i < L.n(); ++i) {
                KVec e(L.n(), KElem(p, 0));
                e[i] = KElem(p, 1);
                gens.push_back(e);
                idx.push_back(L.tags[i] == Tag::R ? 1 : 2);
            }
            PseudoBasis M = make_pseudo_basis(chain, gens, idx);
            if (classify_unimodular_R2(chain, M, L.gram).first != *want) return fail("at_2");
        } else if (p != 2) {
            const auto* want = std::get_if<LocalClassLabel>(&symbol.at_2);
            if (!want) return fail("at_2");
            HermLattice L2(RingCtx::local_ok(p, 2), L.gram);
            if (classify_local(RingCtx::local_ok(p, 2), L2) != *want) return fail("at_2");
        } else {
            if (symbol.at_2 != At2Label{symbol.at_p}) return fail("at_2");
        }
        if (norm_generator(L) != symbol.norm) return fail("norm");
    } catch (const Error& e) {
        return fail(std::string("error:") + error_name(e.code()));
    }
    return VerifyResult{true, ""};
}

}  // namespace hermlat
