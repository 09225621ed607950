#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hermlat/exactnum.hpp"
#include "hermlat/padic.hpp"

namespace hermlat {

using KVec = std::vector<KElem>;

// R = Z_l + l^f0 O_E inside the chain R_1 < ... < R_m, R_i = Z_l + l^{f_i} O_E,
// where E = Q_l(sqrt(-d)).  Elements are global KElem read l-adically.
struct OrderChain {
    long d = 0;
    long ell = 0;
    int f0 = 0;
    std::vector<int> levels;  // f_1 > ... > f_m >= 0, f_1 <= f0
    int precision = 64;
    LocalQuadAlg alg;

    static OrderChain make(long d, long ell, int f0, std::vector<int> levels, int precision = 64);
    // Z_2 + 2 O inside O over Q_2(sqrt(-p)).
    static OrderChain r2(long p, int precision = 64);

    int m() const { return static_cast<int>(levels.size()); }
    int level(int i) const;  // f_i, 1-based; level(0) = f0
    Rational alpha(int i) const;
    bool in_order(const KElem& x, int i) const;   // x in R_i
    bool in_scaled(const KElem& x, int i) const;  // x in alpha_i R_i
    int index_of_level(int f) const;              // 0 if absent
};

// x in l^a (Z_l + l^f O_E)
bool in_scaled_order(const KElem& x, long ell, int a, int f);

// Generator of the conductor (R : R_i) = alpha_i R_i, checked by enumeration.
Rational conductor_generator(const OrderChain& chain, int i);

struct PseudoBasis {
    std::vector<KVec> generators;
    std::vector<int> order_index;     // 1-based into chain levels
    std::vector<int> multiplicities;  // r_1..r_m

    int n() const { return static_cast<int>(generators.size()); }
};

PseudoBasis make_pseudo_basis(const OrderChain& chain, std::vector<KVec> gens, std::vector<int> index);

struct TypeInfo {
    PseudoBasis basis;
    bool basis_built = false;
    std::vector<int> exponents;  // f for each summand R_f, ascending
    int r = 0;                   // summands with f > 0
    int s = 0;                   // summands equal to O_E
    int reduced_dim = 0;         // dim of N / l*O_E*N over F_l
};

// gens: Z_l-spanning set of a full lattice N in E^n.
TypeInfo pseudo_basis_and_type(const OrderChain& chain, const std::vector<KVec>& gens);

// Z_l-basis (coordinate rows) of the module sum R_{i} g_i.
std::vector<std::vector<Rational>> zl_basis(const OrderChain& chain, const PseudoBasis& M);
bool same_module(const OrderChain& chain, const PseudoBasis& a, const PseudoBasis& b);

enum class PerfectStatus { Perfect, NotPerfect, IntegralityViolation };

PerfectStatus perfectness(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G);
// false also when the entries violate the integrality condition
bool is_perfect_pairing(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G);
// throws IntegralityViolation instead of returning false
bool is_perfect_pairing_strict(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G);

struct DecompBlock {
    int order_index = 0;
    KMatrix gram;
    std::vector<KVec> generators;
};

std::vector<DecompBlock> orthogonal_decompose(const OrderChain& chain, const PseudoBasis& M, const KMatrix& G);

// Rows of U span a basis with U G U^dagger = [[0,1],[1,0]] modulo 2^N.
KMatrix hyperbolize(long p, const KMatrix& G, int N = 64);

struct R2Class {
    int r = 0;
    int s = 0;
    bool odd_diag = false;

    bool operator==(const R2Class& o) const { return r == o.r && s == o.s && odd_diag == o.odd_diag; }
    bool operator!=(const R2Class& o) const { return !(*this == o); }
    bool operator<(const R2Class& o) const {
        if (r + s != o.r + o.s) return r + s < o.r + o.s;
        if (s != o.s) return s < o.s;
        return odd_diag < o.odd_diag;
    }
    std::string label() const;
};

R2Class parse_r2_label(const std::string& label);
std::pair<R2Class, std::string> classify_unimodular_R2(const OrderChain& chain, const PseudoBasis& M,
                                                       const KMatrix& G);

struct F2BilForm {
    int n = 0;
    std::vector<std::vector<int>> matrix;
};

struct F2Class {
    int rank = 0;
    bool alternating = true;
    F2BilForm canonical;
};

F2Class f2_classify(const F2BilForm& B);
// Congruence orbits of symmetric n x n matrices over F_2, by brute force (n <= 4).
long f2_orbit_count(int n);
long f2_class_count(int n);

// Residues N(x) mod l^k over the units x of R = Z_l + l^f0 O_E.
std::vector<long> unit_norm_residues(const OrderChain& chain, int k);

}  // namespace hermlat
