#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermlat/genus.hpp"

namespace hermlat {

inline constexpr const char* kGramSchema = "hermlat.gram/1";

struct GramDocument {
    std::string schema = kGramSchema;
    long p = 0;
    Ring ring = Ring::OK;
    std::optional<long> prime;  // absent: global
    int precision = 64;
    std::vector<Tag> order_tags;
    KMatrix entries;
};

GramDocument parse_gram_document(const std::string& text);
std::string serialize_gram_document(const GramDocument& doc);
GramDocument read_gram_file(const std::string& path);  // IOError on failure
GramDocument gram_document_of(const HermLattice& L, Ring ring);

nlohmann::json kelem_json(const KElem& x);
KElem kelem_from_json(long p, const nlohmann::json& j);
nlohmann::json matrix_json(const KMatrix& m);
nlohmann::json symbol_json(const GenusSymbol& s);
nlohmann::json sigma_json(const SigmaReport& r);
nlohmann::json r2class_json(const R2Class& c);

}  // namespace hermlat
