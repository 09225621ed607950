#pragma once

#include <set>
#include <string>
#include <vector>

#include "hermlat/herm.hpp"

namespace hermlat {

enum class LocalLabel {
    SelfDualUnramified,
    ModularP,
    RP_unique,
    RP_normH,
    RP_norm2,
    RU_normal_plus,
    RU_normal_mixed,
    RU_subnormal,
};

const char* label_name(LocalLabel l);
LocalLabel parse_label(const std::string& s);

struct LocalClassLabel {
    LocalLabel variant = LocalLabel::SelfDualUnramified;
    int n = 0;
    bool operator==(const LocalClassLabel& o) const { return variant == o.variant && n == o.n; }
    bool operator!=(const LocalClassLabel& o) const { return !(*this == o); }
    bool operator<(const LocalClassLabel& o) const {
        return variant != o.variant ? variant < o.variant : n < o.n;
    }
    std::string str() const;
};

// Orthogonal splitting into lines and planes by minimal-valuation pivots.
struct JordanBlock {
    KMatrix gram;  // 1x1 or 2x2
    long scale;    // valuation of the pivot entry
};

struct JordanForm {
    std::vector<JordanBlock> blocks;
    KMatrix transform;  // rows: new basis in terms of the old one
};

JordanForm jordan_reduce(const KMatrix& gram, long ell);

// Sign of the unit part of d in Q_ell^x / Nm(O^x) for ell ramified, via (u, -p)_ell.
int dyadic_unit_sign(const Rational& d, long p);

LocalClassLabel classify_local(const RingCtx& ctx, const HermLattice& G);
HermLattice standard_gram(const LocalClassLabel& label, const RingCtx& ctx);
std::set<LocalLabel> local_exists(const RingCtx& ctx, int n, const Rational& d);

}  // namespace hermlat
