#include "hermlat/exactnum.hpp"

#include <algorithm>
#include <sstream>

#include "hermlat/symbols.hpp"

namespace hermlat {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::SingularGram: return "SingularGram";
        case ErrorCode::NonHermitian: return "NonHermitian";
        case ErrorCode::NotSelfDual: return "NotSelfDual";
        case ErrorCode::NotModular: return "NotModular";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::IntegralityViolation: return "IntegralityViolation";
        case ErrorCode::NotPerfect: return "NotPerfect";
        case ErrorCode::NotEvenDiagonal: return "NotEvenDiagonal";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
        case ErrorCode::NoSuchGenus: return "NoSuchGenus";
        case ErrorCode::FactorizationBound: return "FactorizationBound";
        case ErrorCode::UsageError: return "UsageError";
        case ErrorCode::IOError: return "IOError";
    }
    return "Error";
}

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Int num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = Int(s, 10);
        } else {
            num = Int(s.substr(0, slash), 10);
            den = Int(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::InvalidInput, "not a rational: '" + s + "'");
    }
    return make_rational(num, den);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_prime(long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

long next_prime(long n) {
    long m = std::max(2L, n + 1);
    while (!is_prime(m)) ++m;
    return m;
}

std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    for (long q = 2; q <= bound; ++q)
        if (is_prime(q)) out.push_back(q);
    return out;
}

std::vector<std::pair<long, long>> factor(const Int& n_in, long bound) {
    Int n = abs(n_in);
    if (n == 0) throw Error(ErrorCode::InvalidInput, "factor of zero");
    std::vector<std::pair<long, long>> out;
    for (long d = 2; d <= bound; d += (d == 2 ? 1 : 2)) {
        if (Int(d) * d > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            long e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) {
        if (n > Int(bound) * bound || !n.fits_slong_p())
            throw Error(ErrorCode::FactorizationBound, "cofactor " + n.get_str() + " beyond trial division bound");
        out.emplace_back(n.get_si(), 1);
    }
    return out;
}

long vq(const Int& n, long ell) {
    if (n == 0) return kInfVal;
    Int m = n;
    return static_cast<long>(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), Int(ell).get_mpz_t()));
}

long vq(const Rational& q, long ell) {
    if (sgn(q) == 0) return kInfVal;
    return vq(q.get_num(), ell) - vq(q.get_den(), ell);
}

bool is_integral_at(const Rational& q, long ell) {
    if (ell == 0) return q.get_den() == 1;
    return vq(q.get_den(), ell) == 0;
}

long mod_long(const Int& n, long m) {
    Int r = n % m;
    if (r < 0) r += m;
    return r.get_si();
}

long mod_long(const Rational& q, long m) {
    Int den = q.get_den();
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Int(m).get_mpz_t()) == 0)
        throw Error(ErrorCode::InvalidInput, "denominator not invertible mod " + std::to_string(m));
    return mod_long(Int(q.get_num() * inv), m);
}

KElem KElem::omega(long p) {
    if (p % 4 == 3) return KElem(p, Rational(1, 2), Rational(1, 2));
    return KElem(p, 0, 1);
}

KElem KElem::inverse() const {
    Rational n = norm();
    if (sgn(n) == 0) throw Error(ErrorCode::InvalidInput, "inverse of zero");
    return KElem(p, a / n, -b / n);
}

KElem& KElem::operator+=(const KElem& o) {
    a += o.a;
    b += o.b;
    if (p == 0) p = o.p;
    return *this;
}

KElem& KElem::operator-=(const KElem& o) {
    a -= o.a;
    b -= o.b;
    if (p == 0) p = o.p;
    return *this;
}

KElem& KElem::operator*=(const KElem& o) {
    long q = p ? p : o.p;
    if (sgn(o.b) == 0) {
        a *= o.a;
        b *= o.a;
        p = q;
        return *this;
    }
    if (sgn(b) == 0) {
        b = a * o.b;
        a *= o.a;
        p = q;
        return *this;
    }
    Rational na = a * o.a - q * b * o.b;
    Rational nb = a * o.b + b * o.a;
    a = na;
    b = nb;
    p = q;
    return *this;
}

KElem& KElem::operator/=(const KElem& o) { return *this *= o.inverse(); }

std::string KElem::str() const {
    std::ostringstream os;
    if (sgn(b) == 0) {
        os << a.get_str();
    } else if (sgn(a) == 0) {
        os << b.get_str() << "*s";
    } else {
        os << a.get_str() << (sgn(b) > 0 ? "+" : "-") << Rational(abs(b)).get_str() << "*s";
    }
    return os.str();
}

KElem operator+(KElem x, const KElem& y) { return x += y; }
KElem operator-(KElem x, const KElem& y) { return x -= y; }
KElem operator*(KElem x, const KElem& y) { return x *= y; }
KElem operator/(KElem x, const KElem& y) { return x /= y; }
KElem operator*(const Rational& r, const KElem& x) { return KElem(x.p, r * x.a, r * x.b); }

Rational k_norm(const KElem& x) { return x.norm(); }

std::pair<Rational, Rational> o_coords(const KElem& x) {
    if (x.p % 4 == 3) return {x.a - x.b, 2 * x.b};
    return {x.a, x.b};
}

KElem from_o_coords(long p, const Rational& c, const Rational& d) {
    return KElem(p, c, 0) + d * KElem::omega(p);
}

KMatrix::KMatrix(long p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, KElem(p, 0, 0)) {}

KMatrix KMatrix::identity(long p, int n) {
    KMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = KElem(p, 1);
    return m;
}

KMatrix KMatrix::diag(long p, const std::vector<Rational>& d) {
    KMatrix m(p, static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = KElem(p, d[i]);
    return m;
}

KMatrix KMatrix::block_diag(const std::vector<KMatrix>& blocks) {
    int n = 0;
    long p = 0;
    for (const auto& b : blocks) {
        n += b.rows();
        p = b.p();
    }
    KMatrix m(p, n, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return m;
}

KMatrix KMatrix::adjoint() const {
    KMatrix m(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
    return m;
}

KMatrix KMatrix::transpose() const {
    KMatrix m(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

KMatrix KMatrix::submatrix(const std::vector<int>& r, const std::vector<int>& c) const {
    KMatrix m(p_, static_cast<int>(r.size()), static_cast<int>(c.size()));
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < c.size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = (*this)(r[i], c[j]);
    return m;
}

KElem KMatrix::det() const {
    if (rows_ != cols_) throw Error(ErrorCode::InvalidInput, "det of non-square matrix");
    KMatrix m = *this;
    KElem d(p_, 1);
    for (int c = 0; c < cols_; ++c) {
        int piv = -1;
        for (int r = c; r < rows_; ++r)
            if (!m(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return KElem(p_, 0);
        if (piv != c) {
            for (int j = 0; j < cols_; ++j) std::swap(m(piv, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        KElem inv = m(c, c).inverse();
        for (int r = c + 1; r < rows_; ++r) {
            if (m(r, c).is_zero()) continue;
            KElem f = m(r, c) * inv;
            for (int j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

KMatrix KMatrix::inverse() const {
    if (rows_ != cols_) throw Error(ErrorCode::InvalidInput, "inverse of non-square matrix");
    int n = rows_;
    KMatrix m = *this;
    KMatrix inv = identity(p_, n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error(ErrorCode::SingularGram, "matrix is singular");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        KElem s = m(c, c).inverse();
        for (int j = 0; j < n; ++j) {
            m(c, j) *= s;
            inv(c, j) *= s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            KElem f = m(r, c);
            for (int j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

bool KMatrix::is_hermitian() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i).conj()) return false;
    return true;
}

bool KMatrix::operator==(const KMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string KMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

KMatrix operator*(const KMatrix& x, const KMatrix& y) {
    if (x.cols() != y.rows()) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
    KMatrix m(x.p() ? x.p() : y.p(), x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            const KElem& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < y.cols(); ++j)
                if (!y(k, j).is_zero()) m(i, j) += xik * y(k, j);
        }
    return m;
}

KMatrix operator+(const KMatrix& x, const KMatrix& y) {
    KMatrix m = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) m(i, j) += y(i, j);
    return m;
}

KMatrix operator-(const KMatrix& x, const KMatrix& y) {
    KMatrix m = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) m(i, j) -= y(i, j);
    return m;
}

KMatrix operator*(const KElem& s, const KMatrix& x) {
    KMatrix m = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) m(i, j) = s * x(i, j);
    return m;
}

KMatrix congruent(const KMatrix& t, const KMatrix& g) { return t * g * t.adjoint(); }

DetClass DetClass::operator*(const DetClass& o) const {
    DetClass r;
    r.p = p;
    std::set_symmetric_difference(inert_support.begin(), inert_support.end(), o.inert_support.begin(),
                                  o.inert_support.end(), std::back_inserter(r.inert_support));
    r.rs_bit = rs_bit ^ o.rs_bit;
    return r;
}

std::string DetClass::str() const {
    if (is_trivial()) return "[1]";
    std::string s = "[";
    bool first = true;
    for (long l : inert_support) {
        s += (first ? "" : "*") + std::to_string(l);
        first = false;
    }
    if (rs_bit) s += (first ? "" : "*") + std::string("g") + std::to_string(gamma_rs_generator(p));
    return s + "]";
}

DetClass trivial_class(long p) {
    DetClass c;
    c.p = p;
    return c;
}

DetClass det_class_of(const Rational& q, long p) {
    if (sgn(q) <= 0) throw Error(ErrorCode::InvalidInput, "determinant class needs q > 0");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    DetClass c = trivial_class(p);
    Rational residual = q;
    std::vector<std::pair<long, long>> exps;
    for (auto [l, e] : factor(q.get_num())) exps.emplace_back(l, e);
    for (auto [l, e] : factor(q.get_den())) exps.emplace_back(l, -e);
    // num and den are coprime, so each prime shows up once
    std::sort(exps.begin(), exps.end());
    for (auto [l, e] : exps) {
        if (artin(p, l) != -1) continue;
        Rational lq(l);
        if (e > 0)
            for (long k = 0; k < e; ++k) residual /= lq;
        else
            for (long k = 0; k < -e; ++k) residual *= lq;
        if ((e % 2 + 2) % 2 == 1) c.inert_support.push_back(l);
    }
    if (p % 4 == 1) c.rs_bit = hilbert(residual, Rational(-p), 2) == -1 ? 1 : 0;
    return c;
}

long gamma_rs_generator(long p) {
    if (!is_prime(p) || p % 4 != 1) throw Error(ErrorCode::InvalidInput, "needs a prime p = 1 mod 4");
    for (long l = 3;; l += 4) {
        if (!is_prime(l) || legendre(Int(l), p) != -1) continue;
        Rational g(l), mp(-p);
        bool ok = hilbert(g, mp, 2) == -1 && hilbert(g, mp, p) == -1;
        for (long v : hilbert_support(g, mp))
            if (v != 2 && v != p && hilbert(g, mp, v) != 1) ok = false;
        if (!ok) throw Error(ErrorCode::Inconsistent, "generator symbol check failed");
        return l;
    }
}

}  // namespace hermlat
