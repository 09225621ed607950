#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hermlat/error.hpp"

namespace hermlat {

using Int = mpz_class;
using Rational = mpq_class;

// Valuation of zero.
inline constexpr long kInfVal = std::numeric_limits<long>::max() / 4;

Rational make_rational(const Int& num, const Int& den = 1);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

bool is_prime(long n);
long next_prime(long n);
std::vector<long> primes_up_to(long bound);

// Trial division; throws FactorizationBound if a cofactor above bound^2 remains.
std::vector<std::pair<long, long>> factor(const Int& n, long bound = 1000000);

long vq(const Int& n, long ell);
long vq(const Rational& q, long ell);
bool is_integral_at(const Rational& q, long ell);  // ell == 0: integral everywhere
long mod_long(const Int& n, long m);
long mod_long(const Rational& q, long m);  // denominator must be prime to m

// Element a + b*sqrt(-p) of Q(sqrt(-p)).
struct KElem {
    long p = 0;
    Rational a;
    Rational b;

    KElem() = default;
    KElem(long p_, Rational a_, Rational b_ = 0) : p(p_), a(std::move(a_)), b(std::move(b_)) {}
    static KElem sqrt_neg_p(long p) { return KElem(p, 0, 1); }
    // generator of O_K over Z
    static KElem omega(long p);

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_rational() const { return sgn(b) == 0; }
    KElem conj() const { return KElem(p, a, -b); }
    Rational norm() const { return a * a + p * b * b; }
    Rational trace() const { return 2 * a; }
    KElem inverse() const;

    KElem operator-() const { return KElem(p, -a, -b); }
    KElem& operator+=(const KElem& o);
    KElem& operator-=(const KElem& o);
    KElem& operator*=(const KElem& o);
    KElem& operator/=(const KElem& o);
    bool operator==(const KElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const KElem& o) const { return !(*this == o); }

    std::string str() const;
};

KElem operator+(KElem x, const KElem& y);
KElem operator-(KElem x, const KElem& y);
KElem operator*(KElem x, const KElem& y);
KElem operator/(KElem x, const KElem& y);
KElem operator*(const Rational& r, const KElem& x);

Rational k_norm(const KElem& x);

// Coordinates (c, d) with x = c + d*omega.
std::pair<Rational, Rational> o_coords(const KElem& x);
KElem from_o_coords(long p, const Rational& c, const Rational& d);

// Dense matrix over K.
class KMatrix {
public:
    KMatrix() = default;
    KMatrix(long p, int rows, int cols);
    static KMatrix identity(long p, int n);
    static KMatrix diag(long p, const std::vector<Rational>& d);
    static KMatrix block_diag(const std::vector<KMatrix>& blocks);

    long p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    KElem& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const KElem& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    KMatrix adjoint() const;  // conjugate transpose
    KMatrix transpose() const;
    KMatrix submatrix(const std::vector<int>& r, const std::vector<int>& c) const;
    KElem det() const;
    KMatrix inverse() const;  // throws SingularGram
    bool is_hermitian() const;
    bool operator==(const KMatrix& o) const;
    bool operator!=(const KMatrix& o) const { return !(*this == o); }
    std::string str() const;

private:
    long p_ = 0;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<KElem> data_;
};

KMatrix operator*(const KMatrix& x, const KMatrix& y);
KMatrix operator+(const KMatrix& x, const KMatrix& y);
KMatrix operator-(const KMatrix& x, const KMatrix& y);
KMatrix operator*(const KElem& s, const KMatrix& x);
// T * G * T^dagger
KMatrix congruent(const KMatrix& t, const KMatrix& g);

// Class in Q_{>0}^x / N(K^x).
struct DetClass {
    long p = 0;
    std::vector<long> inert_support;  // sorted
    int rs_bit = 0;

    bool is_trivial() const { return inert_support.empty() && rs_bit == 0; }
    bool operator==(const DetClass& o) const {
        return p == o.p && inert_support == o.inert_support && rs_bit == o.rs_bit;
    }
    bool operator!=(const DetClass& o) const { return !(*this == o); }
    DetClass operator*(const DetClass& o) const;
    std::string str() const;
};

DetClass det_class_of(const Rational& q, long p);
DetClass trivial_class(long p);
long gamma_rs_generator(long p);

}  // namespace hermlat
