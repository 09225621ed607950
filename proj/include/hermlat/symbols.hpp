#pragma once

#include "hermlat/exactnum.hpp"

namespace hermlat {

// The infinite place.
inline constexpr long kInfinity = 0;

int legendre(const Int& a, long ell);
int hilbert(const Rational& a, const Rational& b, long ell);
int artin(long p, long ell);

// Places where hilbert(a, b, .) can be nontrivial: infinity, 2 and primes of a, b.
std::vector<long> hilbert_support(const Rational& a, const Rational& b);

}  // namespace hermlat
