#include "hermlat/padic.hpp"

#include "hermlat/symbols.hpp"

namespace hermlat {

namespace {

Int ipow(long ell, long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(e));
    return r;
}

Int reduce(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

void same_ring(const PadicInt& a, const PadicInt& b) {
    if (a.ell != b.ell || a.N != b.N) throw Error(ErrorCode::InvalidInput, "mixed ell-adic rings");
}

}  // namespace

PadicInt PadicInt::from_int(const Int& v, long ell, int N) {
    PadicInt x;
    x.ell = ell;
    x.N = N;
    x.r = reduce(v, ipow(ell, N));
    return x;
}

PadicInt PadicInt::from_rational(const Rational& q, long ell, int N) {
    if (!is_integral_at(q, ell)) throw Error(ErrorCode::InvalidInput, "not " + std::to_string(ell) + "-integral");
    Int m = ipow(ell, N);
    Int inv;
    Int den = q.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    return from_int(q.get_num() * inv, ell, N);
}

Int PadicInt::modulus() const { return ipow(ell, N); }

PadicInt PadicInt::truncate(int M) const { return from_int(r, ell, M); }

PadicInt PadicInt::operator+(const PadicInt& o) const {
    same_ring(*this, o);
    return from_int(r + o.r, ell, N);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
    same_ring(*this, o);
    return from_int(r - o.r, ell, N);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
    same_ring(*this, o);
    return from_int(r * o.r, ell, N);
}

PadicInt PadicInt::operator-() const { return from_int(-r, ell, N); }

std::optional<long> padic_val(const PadicInt& x) {
    if (x.r == 0) return std::nullopt;
    return vq(x.r, x.ell);
}

Int eval_poly(const std::vector<Int>& f, const Int& x) {
    Int acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

PadicInt hensel_root(const std::vector<Int>& f, long ell, int N) {
    if (!is_prime(ell)) throw Error(ErrorCode::InvalidInput, "hensel_root needs a prime");
    std::vector<Int> df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<unsigned long>(i));
    long root = -1;
    for (long r = 0; r < ell; ++r) {
        if (mod_long(eval_poly(f, r), ell) == 0 && mod_long(eval_poly(df, r), ell) != 0) {
            root = r;
            break;
        }
    }
    if (root < 0) throw Error(ErrorCode::NoRoot, "no simple root modulo " + std::to_string(ell));
    Int m = ipow(ell, N);
    Int x = root;
    for (int prec = 1; prec < N;) {
        prec = std::min(2 * prec, N);
        Int mod = ipow(ell, prec);
        Int d = reduce(eval_poly(df, x), mod);
        Int inv;
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
        x = reduce(x - eval_poly(f, x) * inv, mod);
    }
    return PadicInt::from_int(x, ell, N);
}

LocalQuadAlg make_local_alg(long p, long ell, int N) {
    if (N < 4) throw Error(ErrorCode::InsufficientPrecision, "precision must be at least 4");
    if (!is_prime(p) || !is_prime(ell)) throw Error(ErrorCode::InvalidInput, "make_local_alg needs primes");
    LocalQuadAlg a;
    a.p = p;
    a.ell = ell;
    a.N = N;
    int s = artin(p, ell);
    a.kind = s == 1 ? AlgKind::Split : (s == -1 ? AlgKind::Inert : AlgKind::Ramified);
    if (ell == 2 && p % 4 == 3) {
        a.t = 1;
        a.n = (p + 1) / 4;
    } else {
        a.t = 0;
        a.n = p;
    }
    if (a.kind == AlgKind::Split) {
        if (ell == 2) {
            // u = 1 + 2s with s^2 + s + (p+1)/4 = 0
            PadicInt s = hensel_root({Int((p + 1) / 4), 1, 1}, 2, N);
            a.split_root = PadicInt::from_int(1 + 2 * s.r, 2, N);
        } else {
            a.split_root = hensel_root({Int(p), 0, 1}, ell, N);
        }
    }
    return a;
}

LocalKElem local_from_coords(const LocalQuadAlg& alg, const Int& x, const Int& y) {
    return LocalKElem{alg, PadicInt::from_int(x, alg.ell, alg.N), PadicInt::from_int(y, alg.ell, alg.N)};
}

LocalKElem to_local(const KElem& v, const LocalQuadAlg& alg) {
    auto P = [&](const Rational& q) { return PadicInt::from_rational(q, alg.ell, alg.N); };
    if (alg.kind == AlgKind::Split) {
        const PadicInt& u = *alg.split_root;
        PadicInt a = P(v.a), b = P(v.b);
        return LocalKElem{alg, a + b * u, a - b * u};
    }
    if (alg.t == 1) {
        auto [c, d] = o_coords(v);
        return LocalKElem{alg, P(c), P(d)};
    }
    return LocalKElem{alg, P(v.a), P(v.b)};
}

LocalKElem LocalKElem::operator+(const LocalKElem& o) const { return LocalKElem{alg, x + o.x, y + o.y}; }

LocalKElem LocalKElem::operator-(const LocalKElem& o) const { return LocalKElem{alg, x - o.x, y - o.y}; }

LocalKElem LocalKElem::operator*(const LocalKElem& o) const {
    if (alg.kind == AlgKind::Split) return LocalKElem{alg, x * o.x, y * o.y};
    PadicInt t = PadicInt::from_int(alg.t, alg.ell, alg.N);
    PadicInt n = PadicInt::from_int(alg.n, alg.ell, alg.N);
    PadicInt yy = y * o.y;
    return LocalKElem{alg, x * o.x - n * yy, x * o.y + y * o.x + t * yy};
}

LocalKElem LocalKElem::conj() const {
    if (alg.kind == AlgKind::Split) return LocalKElem{alg, y, x};
    PadicInt t = PadicInt::from_int(alg.t, alg.ell, alg.N);
    return LocalKElem{alg, x + t * y, -y};
}

PadicInt LocalKElem::norm() const {
    if (alg.kind == AlgKind::Split) return x * y;
    LocalKElem m = (*this) * conj();
    return m.x;
}

std::optional<long> padic_val(const LocalKElem& z) {
    if (z.alg.kind == AlgKind::Ramified) {
        PadicInt n = z.norm();
        if (!n.is_zero()) return padic_val(n);
        if (z.x.is_zero() && z.y.is_zero()) return std::nullopt;
        throw Error(ErrorCode::InsufficientPrecision, "norm vanishes at working precision");
    }
    auto vx = padic_val(z.x), vy = padic_val(z.y);
    if (!vx) return vy;
    if (!vy) return vx;
    return std::min(*vx, *vy);
}

bool is_local_norm(const Rational& a, long p, long ell) {
    if (sgn(a) == 0) throw Error(ErrorCode::InvalidInput, "is_local_norm of zero");
    return hilbert(a, Rational(-p), ell) == 1;
}

bool certify_local_norm(const Rational& a, long p, long ell, long max_enum) {
    if (sgn(a) == 0) throw Error(ErrorCode::InvalidInput, "certify_local_norm of zero");
    long k = vq(a, ell);
    Int unit_num = a.get_num(), unit_den = a.get_den();
    Int tmp;
    mpz_remove(tmp.get_mpz_t(), unit_num.get_mpz_t(), Int(ell).get_mpz_t());
    unit_num = tmp;
    mpz_remove(tmp.get_mpz_t(), unit_den.get_mpz_t(), Int(ell).get_mpz_t());
    unit_den = tmp;
    long k0 = ((k % 2) + 2) % 2;
    int tail = ell == 2 ? 3 : 1;
    int scales = ell == 2 ? 2 : 1;
    for (int j = 0; j < scales; ++j) {
        long va = k0 + 2 * j;
        long M = va + tail;
        Int mod = ipow(ell, M);
        if (mod * mod > max_enum) throw Error(ErrorCode::InsufficientPrecision, "residue search too large");
        long m = mod.get_si();
        // target unit part modulo ell^tail
        Int tmod = ipow(ell, tail);
        Int inv;
        mpz_invert(inv.get_mpz_t(), unit_den.get_mpz_t(), tmod.get_mpz_t());
        long target = mod_long(Int(unit_num * inv), tmod.get_si());
        for (long x = 0; x < m; ++x)
            for (long y = 0; y < m; ++y) {
                Int nv = reduce(Int(x) * x + Int(p) * y * y, mod);
                if (nv == 0 || vq(nv, ell) != va) continue;
                Int u = nv / ipow(ell, va);
                long um = mod_long(u, tmod.get_si());
                bool square;
                if (ell == 2) {
                    square = (um % 8) == (target % 8);
                } else {
                    square = legendre(Int(um) * target, ell) == 1;
                }
                if (square) return true;
            }
    }
    return false;
}

LocalKElem norm_preimage(const PadicInt& u, const LocalQuadAlg& alg) {
    if (padic_val(u).value_or(1) != 0) throw Error(ErrorCode::InvalidInput, "norm_preimage needs a unit");
    if (alg.kind == AlgKind::Split)
        return LocalKElem{alg, u, PadicInt::from_int(1, alg.ell, alg.N)};
    if (alg.kind == AlgKind::Ramified) throw Error(ErrorCode::InvalidInput, "norm is not onto units when ramified");
    // x^2 + t x y + n y^2 = u
    for (long y = 0; y < std::max(2L, alg.ell); ++y) {
        Int yy = y;
        std::vector<Int> f{alg.n * yy * yy - u.r, Int(alg.t) * yy, 1};
        try {
            PadicInt x = hensel_root(f, alg.ell, alg.N);
            return LocalKElem{alg, x, PadicInt::from_int(yy, alg.ell, alg.N)};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoRoot) throw;
        }
    }
    throw Error(ErrorCode::NoRoot, "no norm preimage found");
}

}  // namespace hermlat
