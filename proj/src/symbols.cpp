#include "hermlat/symbols.hpp"

#include <algorithm>

namespace hermlat {

namespace {

// (u - 1)/2 mod 2 for odd u
int eps2(const Int& u) { return mod_long(Int((u - 1) / 2), 2); }
// (u^2 - 1)/8 mod 2 for odd u
int omega2(const Int& u) { return mod_long(Int((u * u - 1) / 8), 2); }

std::pair<long, Int> split_off(const Int& n, long ell) {
    Int u;
    long e = static_cast<long>(mpz_remove(u.get_mpz_t(), n.get_mpz_t(), Int(ell).get_mpz_t()));
    return {e, u};
}

}  // namespace

int legendre(const Int& a, long ell) {
    if (ell == 2 || !is_prime(ell)) throw Error(ErrorCode::InvalidInput, "legendre needs an odd prime");
    if (mod_long(a, ell) == 0) throw Error(ErrorCode::InvalidInput, "legendre argument divisible by ell");
    return mpz_legendre(Int(mod_long(a, ell)).get_mpz_t(), Int(ell).get_mpz_t());
}

int hilbert(const Rational& a, const Rational& b, long ell) {
    if (sgn(a) == 0 || sgn(b) == 0) throw Error(ErrorCode::InvalidInput, "hilbert symbol of zero");
    // same square classes as a, b
    Int x = a.get_num() * a.get_den();
    Int y = b.get_num() * b.get_den();
    if (ell == kInfinity) return (sgn(x) < 0 && sgn(y) < 0) ? -1 : 1;
    auto [al, u] = split_off(x, ell);
    auto [be, v] = split_off(y, ell);
    if (ell == 2) {
        int e = eps2(u) * eps2(v) + (al % 2) * omega2(v) + (be % 2) * omega2(u);
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    if ((al % 2) && (be % 2) && ((ell - 1) / 2) % 2) s = -s;
    if (be % 2) s *= legendre(u, ell);
    if (al % 2) s *= legendre(v, ell);
    return s;
}

int artin(long p, long ell) {
    if (!is_prime(p) || !is_prime(ell)) throw Error(ErrorCode::InvalidInput, "artin needs primes");
    if (ell == p) return 0;
    if (ell == 2) {
        if (p % 4 == 1) return 0;
        return p % 8 == 7 ? 1 : -1;
    }
    return legendre(Int(-p), ell);
}

std::vector<long> hilbert_support(const Rational& a, const Rational& b) {
    std::vector<long> places{kInfinity, 2};
    for (const Int* n : {&a.get_num(), &a.get_den(), &b.get_num(), &b.get_den()})
        for (auto [l, e] : factor(*n)) places.push_back(l);
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    return places;
}

}  // namespace hermlat
