#include "hermlat/bass.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fp_linalg.hpp"

namespace hermlat {

namespace {

using QRow = std::vector<Rational>;
using QMat = std::vector<QRow>;

Rational pow_ell(long ell, long e) {
    Rational r = 1;
    for (long k = 0; k < e; ++k) r *= ell;
    for (long k = 0; k > e; --k) r /= ell;
    return r;
}

QRow to_coords(const KVec& v) {
    QRow out;
    out.reserve(2 * v.size());
    for (const KElem& x : v) {
        auto [c, d] = o_coords(x);
        out.push_back(c);
        out.push_back(d);
    }
    return out;
}

KVec from_coords(long p, const QRow& r) {
    KVec v;
    for (size_t k = 0; k + 1 < r.size(); k += 2) v.push_back(from_o_coords(p, r[k], r[k + 1]));
    return v;
}

// omega * (c + d omega) = -n d + (c + t d) omega
QRow omega_act(long p, const QRow& r) {
    KElem w = KElem::omega(p);
    Rational t = w.trace(), n = w.norm();
    QRow out(r.size());
    for (size_t k = 0; k + 1 < r.size(); k += 2) {
        out[k] = -n * r[k + 1];
        out[k + 1] = r[k] + t * r[k + 1];
    }
    return out;
}

QRow scale_row(const Rational& s, QRow r) {
    for (auto& x : r) x *= s;
    return r;
}

// Echelon basis of the Z_(l)-span of the rows.
QMat local_hnf(QMat rows, long ell) {
    QMat out;
    if (rows.empty()) return out;
    size_t cols = rows[0].size();
    for (size_t c = 0; c < cols; ++c) {
        long best = kInfVal;
        int sel = -1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            long v = vq(rows[i][c], ell);
            if (v < best) {
                best = v;
                sel = static_cast<int>(i);
            }
        }
        if (sel < 0) continue;
        QRow piv = rows[sel];
        rows.erase(rows.begin() + sel);
        for (auto& r : rows) {
            if (sgn(r[c]) == 0) continue;
            Rational f = r[c] / piv[c];
            for (size_t j = 0; j < cols; ++j) r[j] -= f * piv[j];
        }
        out.push_back(piv);
    }
    return out;
}

KMatrix qmat_to_k(long p, const QMat& m) {
    KMatrix out(p, static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()));
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = KElem(p, m[i][j]);
    return out;
}

// Coordinates of the rows of a in the square basis b.
QMat coords_in(long p, const QMat& a, const QMat& b) {
    KMatrix x = qmat_to_k(p, a) * qmat_to_k(p, b).inverse();
    QMat out(x.rows(), QRow(x.cols()));
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out[i][j] = x(i, j).a;
    return out;
}

bool all_integral(const QMat& m, long ell) {
    for (const auto& r : m)
        for (const auto& x : r)
            if (!is_integral_at(x, ell)) return false;
    return true;
}

// Valuations of the elementary divisors of an l-integral square matrix.
std::vector<long> elementary_divisors(QMat m, long ell) {
    std::vector<long> out;
    size_t n = m.size();
    for (size_t k = 0; k < n; ++k) {
        long best = kInfVal;
        size_t bi = k, bj = k;
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j) {
                if (sgn(m[i][j]) == 0) continue;
                long v = vq(m[i][j], ell);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best == kInfVal) throw Error(ErrorCode::InvalidInput, "generators do not span a full lattice");
        std::swap(m[k], m[bi]);
        for (auto& r : m) std::swap(r[k], r[bj]);
        for (size_t i = k + 1; i < n; ++i) {
            if (sgn(m[i][k]) == 0) continue;
            Rational f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
        for (size_t j = k + 1; j < n; ++j) {
            if (sgn(m[k][j]) == 0) continue;
            Rational f = m[k][j] / m[k][k];
            for (size_t i = k; i < n; ++i) m[i][j] -= f * m[i][k];
        }
        out.push_back(best);
    }
    std::sort(out.begin(), out.end());
    return out;
}

fp::Mat reduce_mod(const QMat& m, long ell) {
    fp::Mat out(m.size(), fp::Vec(m.empty() ? 0 : m[0].size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) out[i][j] = mod_long(m[i][j], ell);
    return out;
}

QRow lift(const fp::Vec& v, const QMat& basis) {
    QRow out(basis[0].size(), Rational(0));
    for (size_t k = 0; k < v.size(); ++k) {
        if (!v[k]) continue;
        for (size_t j = 0; j < out.size(); ++j) out[j] += v[k] * basis[k][j];
    }
    return out;
}

bool is_unit(const KElem& x, long ell) {
    auto [c, d] = o_coords(x);
    if (!is_integral_at(c, ell) || !is_integral_at(d, ell)) return false;
    return vq(x.norm(), ell) == 0;
}

KVec combine(const KMatrix& coeff, int row, const std::vector<KVec>& gens) {
    long p = coeff.p();
    size_t dim = gens.empty() ? 0 : gens[0].size();
    KVec v(dim, KElem(p, 0));
    for (int k = 0; k < coeff.cols(); ++k) {
        if (coeff(row, k).is_zero()) continue;
        for (size_t j = 0; j < dim; ++j) v[j] += coeff(row, k) * gens[k][j];
    }
    return v;
}

}  // namespace

bool in_scaled_order(const KElem& x, long ell, int a, int f) {
    auto [c, d] = o_coords(x);
    if (sgn(c) != 0 && vq(c, ell) < a) return false;
    if (sgn(d) != 0 && vq(d, ell) < a + f) return false;
    return true;
}

OrderChain OrderChain::make(long d, long ell, int f0, std::vector<int> levels, int precision) {
    if (!is_prime(d)) throw Error(ErrorCode::InvalidInput, "d must be prime");
    if (!is_prime(ell)) throw Error(ErrorCode::InvalidInput, "ell must be prime");
    if (levels.empty()) throw Error(ErrorCode::InvalidInput, "empty order chain");
    if (levels[0] > f0) throw Error(ErrorCode::InvalidInput, "R_1 must contain R");
    for (size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0) throw Error(ErrorCode::InvalidInput, "negative conductor exponent");
        if (i > 0 && levels[i] >= levels[i - 1]) throw Error(ErrorCode::InvalidInput, "chain must be strictly increasing");
    }
    OrderChain c;
    c.d = d;
    c.ell = ell;
    c.f0 = f0;
    c.levels = std::move(levels);
    c.precision = precision;
    c.alg = make_local_alg(d, ell, precision);
    return c;
}

OrderChain OrderChain::r2(long p, int precision) {
    if (p % 4 != 3) throw Error(ErrorCode::InvalidInput, "R_2 needs p = 3 mod 4");
    return make(p, 2, 1, {1, 0}, precision);
}

int OrderChain::level(int i) const {
    if (i == 0) return f0;
    if (i < 1 || i > m()) throw Error(ErrorCode::InvalidInput, "order index out of range");
    return levels[i - 1];
}

Rational OrderChain::alpha(int i) const { return pow_ell(ell, f0 - level(i)); }

bool OrderChain::in_order(const KElem& x, int i) const { return in_scaled_order(x, ell, 0, level(i)); }

bool OrderChain::in_scaled(const KElem& x, int i) const {
    return in_scaled_order(x, ell, f0 - level(i), level(i));
}

int OrderChain::index_of_level(int f) const {
    for (int i = 0; i < m(); ++i)
        if (levels[i] == f) return i + 1;
    return 0;
}

Rational conductor_generator(const OrderChain& chain, int i) {
    Rational a = chain.alpha(i);
    long p = chain.d, ell = chain.ell;
    int fi = chain.level(i);
    KElem w = KElem::omega(p);
    KElem gen2 = pow_ell(ell, fi) * w;
    auto maps_into_r = [&](const KElem& x) { return chain.in_order(x, 0) && chain.in_order(x * gen2, 0); };
    if (!maps_into_r(KElem(p, a))) throw Error(ErrorCode::Inconsistent, "alpha R_i not inside R");
    // every x in l^-1 O with x R_i in R lies in alpha R_i
    long range = 1;
    for (int k = 0; k <= chain.f0 + 1; ++k) range *= ell;
    for (long c = 0; c < range; ++c)
        for (long d = 0; d < range; ++d) {
            KElem x = from_o_coords(p, make_rational(c, ell), make_rational(d, ell));
            if (maps_into_r(x) && !chain.in_scaled(x, i))
                throw Error(ErrorCode::Inconsistent, "conductor larger than alpha R_i");
        }
    return a;
}

PseudoBasis make_pseudo_basis(const OrderChain& chain, std::vector<KVec> gens, std::vector<int> index) {
    if (gens.size() != index.size()) throw Error(ErrorCode::InvalidInput, "one order index per generator");
    PseudoBasis M;
    M.multiplicities.assign(chain.m(), 0);
    for (int i : index) {
        if (i < 1 || i > chain.m()) throw Error(ErrorCode::InvalidInput, "order index out of range");
        ++M.multiplicities[i - 1];
    }
    for (const auto& g : gens)
        if (g.size() != gens[0].size()) throw Error(ErrorCode::InvalidInput, "ragged generators");
    M.generators = std::move(gens);
    M.order_index = std::move(index);
    return M;
}

std::vector<std::vector<Rational>> zl_basis(const OrderChain& chain, const PseudoBasis& M) {
    QMat rows;
    for (int k = 0; k < M.n(); ++k) {
        QRow r = to_coords(M.generators[k]);
        rows.push_back(r);
        rows.push_back(scale_row(pow_ell(chain.ell, chain.level(M.order_index[k])), omega_act(chain.d, r)));
    }
    return local_hnf(rows, chain.ell);
}

bool same_module(const OrderChain& chain, const PseudoBasis& a, const PseudoBasis& b) {
    QMat x = zl_basis(chain, a), y = zl_basis(chain, b);
    if (x.size() != y.size() || x.empty() || x.size() != x[0].size()) return false;
    return all_integral(coords_in(chain.d, x, y), chain.ell) && all_integral(coords_in(chain.d, y, x), chain.ell);
}

TypeInfo pseudo_basis_and_type(const OrderChain& chain, const std::vector<KVec>& gens) {
    if (gens.empty()) throw Error(ErrorCode::InvalidInput, "no generators");
    long p = chain.d, ell = chain.ell;
    int n = static_cast<int>(gens[0].size());
    QMat raw;
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != n) throw Error(ErrorCode::InvalidInput, "ragged generators");
        raw.push_back(to_coords(g));
    }
    QMat nb = local_hnf(raw, ell);
    if (static_cast<int>(nb.size()) != 2 * n) throw Error(ErrorCode::InvalidInput, "generators do not span a full lattice");
    QMat ext = nb;
    for (const auto& r : nb) ext.push_back(omega_act(p, r));
    QMat tb = local_hnf(ext, ell);  // O_E * N

    QMat x = coords_in(p, nb, tb);
    std::vector<long> ed = elementary_divisors(x, ell);
    TypeInfo out;
    for (int k = 0; k < n; ++k)
        if (ed[k] != 0) throw Error(ErrorCode::Inconsistent, "O_E N / N is not cyclic per summand");
    for (int k = n; k < 2 * n; ++k) out.exponents.push_back(static_cast<int>(ed[k]));
    for (int f : out.exponents) {
        if (f > chain.f0) throw Error(ErrorCode::InvalidInput, "N is not an R-module");
        if (f == 0)
            ++out.s;
        else
            ++out.r;
    }
    fp::Mat xbar = reduce_mod(x, ell);
    out.reduced_dim = fp::rank(xbar, ell);
    if (out.r + 2 * out.s != out.reduced_dim) throw Error(ErrorCode::Inconsistent, "rank accounting failed");

    int idx1 = chain.index_of_level(1), idx0 = chain.index_of_level(0);
    bool buildable = true;
    for (int f : out.exponents)
        if (f > 1 || (f == 1 && !idx1) || (f == 0 && !idx0)) buildable = false;
    if (!buildable) return out;

    // l O_E N lies in N: work in O_E N / l O_E N.
    int dim = 2 * n;
    QMat wt;
    for (const auto& r : tb) wt.push_back(omega_act(p, r));
    fp::Mat W = reduce_mod(coords_in(p, wt, tb), ell);
    fp::Mat nbar = xbar;
    fp::rref(nbar, ell);
    // S = {v in Nbar : v W in Nbar}
    fp::Mat ann = fp::right_null(nbar, ell, dim);
    fp::Mat check;
    if (!ann.empty()) {
        fp::Mat annT(dim, fp::Vec(ann.size()));
        for (size_t i = 0; i < ann.size(); ++i)
            for (int j = 0; j < dim; ++j) annT[j][i] = ann[i][j];
        check = fp::mul(fp::mul(nbar, W, ell), annT, ell);
    }
    fp::Mat S;
    if (check.empty()) {
        S = nbar;
    } else {
        for (const auto& a : fp::left_null(check, ell, static_cast<int>(nbar.size()))) {
            fp::Vec v(dim, 0);
            for (size_t i = 0; i < a.size(); ++i)
                for (int j = 0; j < dim; ++j) v[j] = fp::md(v[j] + a[i] * nbar[i][j], ell);
            S.push_back(v);
        }
    }
    if (static_cast<int>(S.size()) != 2 * out.s) throw Error(ErrorCode::Inconsistent, "saturated part has wrong dimension");

    std::vector<fp::Vec> ygens, xgens;
    fp::Mat span;
    auto try_add = [&](const fp::Vec& v) {
        fp::Mat t = span;
        t.push_back(v);
        fp::Mat wv = fp::mul(fp::Mat{v}, W, ell);
        t.push_back(wv[0]);
        if (fp::rank(t, ell) != static_cast<int>(span.size()) + 2) return false;
        span.push_back(v);
        span.push_back(wv[0]);
        ygens.push_back(v);
        return true;
    };
    for (const auto& v : S)
        if (static_cast<int>(ygens.size()) < out.s) try_add(v);
    std::mt19937_64 rng(0x5eed);
    for (int attempt = 0; static_cast<int>(ygens.size()) < out.s && attempt < 1000; ++attempt) {
        fp::Vec v(dim, 0);
        for (const auto& b : S) {
            long c = static_cast<long>(rng() % static_cast<unsigned long>(ell));
            for (int j = 0; j < dim; ++j) v[j] = fp::md(v[j] + c * b[j], ell);
        }
        try_add(v);
    }
    if (static_cast<int>(ygens.size()) != out.s) throw Error(ErrorCode::Inconsistent, "no O_E-basis of the saturated part");
    for (const auto& v : nbar) {
        fp::Mat t = span;
        t.push_back(v);
        if (fp::rank(t, ell) > static_cast<int>(span.size())) {
            span.push_back(v);
            xgens.push_back(v);
        }
    }
    if (static_cast<int>(xgens.size()) != out.r) throw Error(ErrorCode::Inconsistent, "free part has wrong rank");

    std::vector<KVec> g;
    std::vector<int> idx;
    for (const auto& v : xgens) {
        g.push_back(from_coords(p, lift(v, tb)));
        idx.push_back(idx1);
    }
    for (const auto& v : ygens) {
        g.push_back(from_coords(p, lift(v, tb)));
        idx.push_back(idx0);
    }
    out.basis = make_pseudo_basis(chain, g, idx);
    QMat gb = zl_basis(chain, out.basis);
    if (gb.size() != nb.size() || !all_integral(coords_in(p, gb, nb), ell) || !all_integral(coords_in(p, nb, gb), ell))
        throw Error(ErrorCode::Inconsistent, "pseudo-basis does not span N");
    out.basis_built = true;
    return out;
}

PerfectStatus perfectness(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G) {
    int n = M.n();
    if (G.rows() != n || G.cols() != n) throw Error(ErrorCode::InvalidInput, "gram size does not match the pseudo-basis");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int t = std::max(M.order_index[i], M.order_index[j]);
            if (!chain.in_scaled(G(i, j), t)) return PerfectStatus::IntegralityViolation;
        }
    KMatrix B(G.p(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = (1 / chain.alpha(M.order_index[i])) * G(i, j);
    return is_unit(B.det(), chain.ell) ? PerfectStatus::Perfect : PerfectStatus::NotPerfect;
}

bool is_perfect_pairing(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G) {
    return perfectness(chain, M, G) == PerfectStatus::Perfect;
}

bool is_perfect_pairing_strict(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G) {
    PerfectStatus s = perfectness(chain, M, G);
    if (s == PerfectStatus::IntegralityViolation)
        throw Error(ErrorCode::IntegralityViolation, "gram entries outside alpha_t R_t");
    return s == PerfectStatus::Perfect;
}

std::vector<DecompBlock> orthogonal_decompose(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G) {
    if (!is_perfect_pairing(chain, M, G)) throw Error(ErrorCode::NotPerfect, "pairing is not perfect");
    int n = M.n();
    long p = G.p(), ell = chain.ell;
    // stable order by order index
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return M.order_index[a] < M.order_index[b]; });
    KMatrix T(p, n, n);
    for (int i = 0; i < n; ++i) T(i, perm[i]) = KElem(p, 1);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = M.order_index[perm[i]];

    auto project_out = [&](const std::vector<int>& piv, const std::vector<int>& others) {
        KMatrix H = congruent(T, G);
        KMatrix Ainv = H.submatrix(piv, piv).inverse();
        for (int k : others) {
            std::vector<KElem> c(piv.size(), KElem(p, 0));
            for (size_t l = 0; l < piv.size(); ++l) {
                KElem s(p, 0);
                for (size_t m = 0; m < piv.size(); ++m) s += Ainv(l, m) * H(piv[m], k);
                c[l] = s.conj();
            }
            for (int j = 0; j < n; ++j) {
                KElem s = T(k, j);
                for (size_t l = 0; l < piv.size(); ++l) s -= c[l] * T(piv[l], j);
                T(k, j) = s;
            }
        }
    };

    std::vector<std::pair<int, std::vector<int>>> groups;
    int start = 0;
    while (start < n) {
        int end = start;
        while (end < n && idx[end] == idx[start]) ++end;
        std::vector<int> blk, rest;
        for (int k = start; k < end; ++k) blk.push_back(k);
        for (int k = end; k < n; ++k) rest.push_back(k);
        if (!rest.empty()) project_out(blk, rest);
        // refine inside the isotypic block
        Rational ainv = 1 / chain.alpha(idx[start]);
        std::vector<int> left = blk;
        while (!left.empty()) {
            KMatrix H = congruent(T, G);
            std::vector<int> piv;
            for (int k : left) {
                KElem u = ainv * H(k, k);
                if (is_unit(u, ell) && chain.in_order(u, idx[start])) {
                    piv = {k};
                    break;
                }
            }
            if (piv.empty())
                for (size_t a = 0; a < left.size() && piv.empty(); ++a)
                    for (size_t b = a + 1; b < left.size(); ++b) {
                        std::vector<int> pr = {left[a], left[b]};
                        KMatrix sub = H.submatrix(pr, pr);
                        KElem d = sub.det();
                        if (is_unit(ainv * ainv * d, ell)) {
                            piv = pr;
                            break;
                        }
                    }
            if (piv.empty()) piv = left;
            std::vector<int> others;
            for (int k : left)
                if (std::find(piv.begin(), piv.end(), k) == piv.end()) others.push_back(k);
            if (!others.empty()) project_out(piv, others);
            groups.push_back({idx[start], piv});
            left = others;
        }
        start = end;
    }

    KMatrix H = congruent(T, G);
    std::vector<DecompBlock> out;
    std::vector<KVec> all_gens;
    std::vector<int> all_idx;
    for (const auto& [oi, rows] : groups) {
        DecompBlock b;
        b.order_index = oi;
        b.gram = H.submatrix(rows, rows);
        for (int r : rows) {
            b.generators.push_back(combine(T, r, M.generators));
            all_gens.push_back(b.generators.back());
            all_idx.push_back(oi);
        }
        out.push_back(std::move(b));
    }
    for (size_t a = 0; a < groups.size(); ++a)
        for (size_t b = a + 1; b < groups.size(); ++b)
            for (int i : groups[a].second)
                for (int j : groups[b].second)
                    if (!H(i, j).is_zero()) throw Error(ErrorCode::Inconsistent, "blocks are not orthogonal");
    if (!same_module(chain, M, make_pseudo_basis(chain, all_gens, all_idx)))
        throw Error(ErrorCode::Inconsistent, "decomposition changed the module");
    return out;
}

KMatrix hyperbolize(long p, const KMatrix& G, int N) {
    if (p % 4 != 3) throw Error(ErrorCode::InvalidInput, "hyperbolize works over R_2 with p = 3 mod 4");
    if (G.rows() != 2 || G.cols() != 2 || G.p() != p) throw Error(ErrorCode::InvalidInput, "need a 2x2 gram");
    if (!G.is_hermitian()) throw Error(ErrorCode::NonHermitian, "gram is not hermitian");
    OrderChain chain = OrderChain::r2(p, N);
    for (int i = 0; i < 2; ++i)
        if (!is_integral_at(G(i, i).a, 2)) throw Error(ErrorCode::NotPerfect, "gram is not integral");
    if (!chain.in_order(G(0, 1), 1)) throw Error(ErrorCode::NotPerfect, "gram is not integral");
    for (int i = 0; i < 2; ++i)
        if (sgn(G(i, i).a) != 0 && vq(G(i, i).a, 2) < 1) throw Error(ErrorCode::NotEvenDiagonal, "odd diagonal entry");
    if (vq(G(0, 1).norm(), 2) != 0) throw Error(ErrorCode::NotPerfect, "gram is not unimodular");

    KElem pi = KElem::sqrt_neg_p(p);
    KMatrix U(p, 2, 2);
    auto inner = [&](const KMatrix& rows, int a, int b) { return congruent(rows, G)(a, b); };
    if (G(0, 0).is_zero()) {
        U(0, 0) = KElem(p, 1);
    } else {
        KElem lam = G(0, 1).conj().inverse();
        Rational a = G(0, 0).a / 2;
        Rational b = G(1, 1).a * lam.norm() / 2;
        Int ca = PadicInt::from_rational(a * (1 + p), 2, N).r;
        Int cb = PadicInt::from_rational(b, 2, N).r;
        Int x = hensel_root({cb, Int(1), ca}, 2, N).r;
        U(0, 0) = Rational(x) * (KElem(p, 1) + pi);
        U(0, 1) = lam;
    }
    // v = mu e_k with <u, v> = 1 and mu in R_2
    bool found = false;
    for (int k = 0; k < 2 && !found; ++k) {
        KMatrix UE(p, 2, 2);
        UE(0, 0) = U(0, 0);
        UE(0, 1) = U(0, 1);
        UE(1, k) = KElem(p, 1);
        KElem c = inner(UE, 0, 1);
        if (c.is_zero()) continue;
        KElem mu = c.conj().inverse();
        if (!chain.in_order(mu, 1)) continue;
        U(1, k) = mu;
        U(1, 1 - k) = KElem(p, 0);
        found = true;
    }
    if (!found) throw Error(ErrorCode::NotPerfect, "no dual partner in R_2");
    KElem vv = inner(U, 1, 1);
    Rational t = vv.a / 2;
    U(1, 0) -= t * U(0, 0);
    U(1, 1) -= t * U(0, 1);
    KMatrix H = congruent(U, G);
    auto small = [&](const KElem& e) {
        auto [x0, y0] = o_coords(e);
        return (sgn(x0) == 0 || vq(x0, 2) >= N) && (sgn(y0) == 0 || vq(y0, 2) >= N);
    };
    if (!small(H(0, 0)) || !small(H(1, 1)) || !small(H(0, 1) - KElem(p, 1)))
        throw Error(ErrorCode::InsufficientPrecision, "hyperbolic basis not reached at this precision");
    return U;
}

std::string R2Class::label() const {
    std::vector<std::string> parts;
    auto pw = [](const std::string& base, int k) { return k == 1 ? base : base + "^" + std::to_string(k); };
    int h = 0, l1 = 0;
    if (r % 2) {
        l1 = 1;
        h = (r - 1) / 2;
    } else if (odd_diag && r > 0) {
        l1 = 2;
        h = (r - 2) / 2;
    } else {
        h = r / 2;
    }
    if (l1) parts.push_back(pw("L1", l1));
    if (h) parts.push_back(pw("H", h));
    if (s) parts.push_back(pw("L0", s));
    std::string outs;
    for (size_t k = 0; k < parts.size(); ++k) outs += (k ? " + " : "") + parts[k];
    return outs;
}

R2Class parse_r2_label(const std::string& label) {
    R2Class c;
    int l1 = 0, h = 0;
    size_t pos = 0;
    while (pos < label.size()) {
        size_t end = label.find(" + ", pos);
        std::string part = label.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? label.size() : end + 3;
        std::string base = part;
        int k = 1;
        size_t caret = part.find('^');
        if (caret != std::string::npos) {
            base = part.substr(0, caret);
            try {
                k = std::stoi(part.substr(caret + 1));
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidInput, "bad exponent in '" + label + "'");
            }
        }
        if (k < 1) throw Error(ErrorCode::InvalidInput, "bad exponent in '" + label + "'");
        if (base == "L1")
            l1 += k;
        else if (base == "H")
            h += k;
        else if (base == "L0")
            c.s += k;
        else
            throw Error(ErrorCode::InvalidInput, "unknown block '" + base + "'");
    }
    if (l1 > 2) throw Error(ErrorCode::InvalidInput, "at most two L1 blocks in a canonical label");
    c.r = l1 + 2 * h;
    c.odd_diag = l1 > 0;
    if (c.r + c.s == 0) throw Error(ErrorCode::InvalidInput, "empty label");
    if (c.label() != label) throw Error(ErrorCode::InvalidInput, "label '" + label + "' is not canonical");
    return c;
}

std::pair<R2Class, std::string> classify_unimodular_R2(const OrderChain& chain, const PseudoBasis& M,
                                                       const KMatrix& G) {
    if (chain.ell != 2 || chain.f0 != 1 || chain.levels != std::vector<int>{1, 0} || chain.d % 4 != 3)
        throw Error(ErrorCode::InvalidInput, "classification needs the chain R_2 < O_K2");
    if (!G.is_hermitian()) throw Error(ErrorCode::NonHermitian, "gram is not hermitian");
    if (!is_perfect_pairing(chain, M, G)) throw Error(ErrorCode::NotPerfect, "pairing is not perfect");
    R2Class c;
    for (int i = 0; i < M.n(); ++i) {
        if (M.order_index[i] == 1) {
            ++c.r;
            if (vq(G(i, i).a, 2) == 0) c.odd_diag = true;
        } else {
            ++c.s;
        }
    }
    if (c.r % 2 && !c.odd_diag) throw Error(ErrorCode::Inconsistent, "odd free rank with even diagonal");
    return {c, c.label()};
}

F2Class f2_classify(const F2BilForm& B) {
    int n = B.n;
    if (static_cast<int>(B.matrix.size()) != n) throw Error(ErrorCode::InvalidInput, "matrix size mismatch");
    fp::Mat m(n, fp::Vec(n));
    bool alt = true;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(B.matrix[i].size()) != n) throw Error(ErrorCode::InvalidInput, "matrix size mismatch");
        for (int j = 0; j < n; ++j) {
            m[i][j] = B.matrix[i][j] & 1;
            if ((B.matrix[i][j] & 1) != (B.matrix[j][i] & 1)) throw Error(ErrorCode::InvalidInput, "not symmetric");
        }
        if (m[i][i]) alt = false;
    }
    F2Class c;
    c.rank = fp::rank(m, 2);
    c.alternating = alt;
    c.canonical.n = n;
    c.canonical.matrix.assign(n, std::vector<int>(n, 0));
    if (alt) {
        for (int k = 0; k + 1 < c.rank; k += 2) c.canonical.matrix[k][k + 1] = c.canonical.matrix[k + 1][k] = 1;
    } else {
        for (int k = 0; k < c.rank; ++k) c.canonical.matrix[k][k] = 1;
    }
    return c;
}

long f2_class_count(int n) { return n + 1 + n / 2; }

long f2_orbit_count(int n) {
    if (n < 0 || n > 4) throw Error(ErrorCode::InvalidInput, "brute force limited to n <= 4");
    if (n == 0) return 1;
    // matrices as n*n bit masks, rows as n-bit words
    auto get = [n](uint32_t m, int i, int j) { return (m >> (i * n + j)) & 1u; };
    std::vector<uint32_t> group;
    uint32_t total = 1u << (n * n);
    for (uint32_t g = 0; g < total; ++g) {
        fp::Mat t(n, fp::Vec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = get(g, i, j);
        if (fp::rank(t, 2) == n) group.push_back(g);
    }
    std::set<uint32_t> orbits;
    std::vector<bool> seen(total, false);
    for (uint32_t s = 0; s < total; ++s) {
        bool sym = true;
        for (int i = 0; i < n && sym; ++i)
            for (int j = 0; j < i; ++j)
                if (get(s, i, j) != get(s, j, i)) sym = false;
        if (!sym || seen[s]) continue;
        orbits.insert(s);
        for (uint32_t g : group) {
            uint32_t img = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    uint32_t v = 0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) v ^= get(g, i, a) & get(s, a, b) & get(g, j, b);
                    img |= v << (i * n + j);
                }
            seen[img] = true;
        }
    }
    return static_cast<long>(orbits.size());
}

std::vector<long> unit_norm_residues(const OrderChain& chain, int k) {
    long mod = 1;
    for (int i = 0; i < k; ++i) mod *= chain.ell;
    long step = 1;
    for (int i = 0; i < chain.f0 && step < mod; ++i) step *= chain.ell;
    KElem w = KElem::omega(chain.d);
    long t = mod_long(w.trace(), mod), nn = mod_long(w.norm(), mod);
    std::set<long> out;
    for (long c = 0; c < mod; ++c)
        for (long d = 0; d < mod; d += step) {
            long nv = ((c * c) % mod + (t * c % mod) * d % mod + (nn * d % mod) * d % mod) % mod;
            if (nv % chain.ell) out.insert(nv);
        }
    return {out.begin(), out.end()};
}

}  // namespace hermlat
