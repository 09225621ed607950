#pragma once

#include <optional>
#include <vector>

#include "hermlat/exactnum.hpp"

namespace hermlat {

// Residue modulo ell^N standing for an element of Z_ell.
struct PadicInt {
    long ell = 2;
    int N = 64;
    Int r;  // 0 <= r < ell^N

    static PadicInt from_int(const Int& v, long ell, int N);
    static PadicInt from_rational(const Rational& q, long ell, int N);  // InvalidInput unless ell-integral
    Int modulus() const;
    bool is_zero() const { return r == 0; }
    PadicInt truncate(int M) const;

    PadicInt operator+(const PadicInt& o) const;
    PadicInt operator-(const PadicInt& o) const;
    PadicInt operator*(const PadicInt& o) const;
    PadicInt operator-() const;
    bool operator==(const PadicInt& o) const { return ell == o.ell && N == o.N && r == o.r; }
};

// nullopt means the residue is zero at the working precision.
std::optional<long> padic_val(const PadicInt& x);

enum class AlgKind { Split, Inert, Ramified };

struct LocalQuadAlg {
    long p = 0;
    long ell = 0;
    int N = 64;
    AlgKind kind = AlgKind::Inert;
    std::optional<PadicInt> split_root;  // u with u^2 = -p
    // field cases: coordinates are taken in the basis {1, w}, w^2 = t*w - n
    long t = 0;
    Int n;
};

LocalQuadAlg make_local_alg(long p, long ell, int N = 64);

struct LocalKElem {
    LocalQuadAlg alg;
    PadicInt x;
    PadicInt y;

    LocalKElem operator+(const LocalKElem& o) const;
    LocalKElem operator-(const LocalKElem& o) const;
    LocalKElem operator*(const LocalKElem& o) const;
    LocalKElem conj() const;
    PadicInt norm() const;
    bool operator==(const LocalKElem& o) const { return x == o.x && y == o.y; }
};

LocalKElem to_local(const KElem& v, const LocalQuadAlg& alg);
// Split case: components; field cases: coordinates in {1, w}.
LocalKElem local_from_coords(const LocalQuadAlg& alg, const Int& x, const Int& y);

// Valuation in the uniformizer for ramified algebras, componentwise minimum when split.
std::optional<long> padic_val(const LocalKElem& z);

// Coefficients c0 + c1 x + c2 x^2 + ...
PadicInt hensel_root(const std::vector<Int>& f, long ell, int N);
Int eval_poly(const std::vector<Int>& f, const Int& x);

bool is_local_norm(const Rational& a, long p, long ell);
// Independent check by solving x^2 + p y^2 = a*(square) on residues.
bool certify_local_norm(const Rational& a, long p, long ell, long max_enum = 10000000);
// Unramified case: an element whose norm is the given unit modulo ell^N.
LocalKElem norm_preimage(const PadicInt& u, const LocalQuadAlg& alg);

}  // namespace hermlat
