#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hermlat/bass.hpp"
#include "hermlat/herm.hpp"
#include "hermlat/localclass.hpp"

namespace hermlat {

enum class Ring { OK, R };

const char* ring_name(Ring r);
Ring parse_ring(const std::string& s);

using At2Label = std::variant<LocalClassLabel, R2Class>;

std::string at2_str(const At2Label& a);

struct GenusSymbol {
    long p = 0;
    int n = 0;
    Ring ring = Ring::OK;
    DetClass det;
    LocalClassLabel at_p;
    At2Label at_2;
    Rational norm;  // positive generator: phi(L, L) values span norm * Z

    bool operator==(const GenusSymbol& o) const;
    bool operator!=(const GenusSymbol& o) const { return !(*this == o); }
    std::string str() const;
};

struct SigmaReport {
    long p = 0;
    int n = 0;
    bool nonempty = false;
    std::optional<DetClass> forced_det;
    long sigma1 = 0;
    std::optional<long> sigma2;  // absent unless p = 3 mod 4
    long total = 0;
};

bool exists_modular(long p, int n, Ring ring, const DetClass& det);
std::vector<GenusSymbol> genus_enumerate(long p, int n, Ring ring);
SigmaReport sigma_report(long p, int n);

struct VerifyResult {
    bool ok = false;
    std::string reason;  // empty when ok
};

VerifyResult verify_genus(const HermLattice& L, const GenusSymbol& symbol);
HermLattice glue_lattice(const GenusSymbol& symbol);

// Gram of the free R_2 / O_K block structure realizing an R_2 class globally.
HermLattice r2_block_lattice(long p, const R2Class& c);

}  // namespace hermlat
