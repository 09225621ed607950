#include "hermlat/json_io.hpp"

#include <fstream>
#include <sstream>

namespace hermlat {

using nlohmann::json;

namespace {

long parse_long(const json& j, const char* what) {
    if (!j.is_string()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a decimal string");
    const std::string& s = j.get_ref<const std::string&>();
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw Error(ErrorCode::InvalidInput, std::string(what) + " is not an integer: " + s);
    return v;
}

Tag parse_tag(const json& j) {
    if (j == "R") return Tag::R;
    if (j == "OK") return Tag::OK;
    throw Error(ErrorCode::InvalidInput, "order tag must be R or OK");
}

}  // namespace

json kelem_json(const KElem& x) { return json::array({to_string(x.a), to_string(x.b)}); }

KElem kelem_from_json(long p, const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw Error(ErrorCode::InvalidInput, "entry must be a pair of rational strings");
    return KElem(p, parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
}

json matrix_json(const KMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(kelem_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

GramDocument parse_gram_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "gram document must be an object");
    for (const char* key : {"schema", "p", "ring", "precision", "order_tags", "entries"})
        if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field ") + key);
    GramDocument d;
    d.schema = j["schema"].is_string() ? j["schema"].get<std::string>() : "";
    if (d.schema != kGramSchema) throw Error(ErrorCode::InvalidInput, "unknown schema");
    d.p = parse_long(j["p"], "p");
    if (!is_prime(d.p)) throw Error(ErrorCode::InvalidInput, "p must be prime");
    if (!j["ring"].is_string()) throw Error(ErrorCode::InvalidInput, "ring must be a string");
    d.ring = parse_ring(j["ring"].get<std::string>());
    if (j.contains("prime")) {
        d.prime = parse_long(j["prime"], "prime");
        if (!is_prime(*d.prime)) throw Error(ErrorCode::InvalidInput, "prime must be prime");
    }
    long prec = parse_long(j["precision"], "precision");
    if (prec < 4 || prec > 4096) throw Error(ErrorCode::InvalidInput, "precision out of range");
    d.precision = static_cast<int>(prec);
    const json& tags = j["order_tags"];
    const json& ent = j["entries"];
    if (!tags.is_array() || !ent.is_array()) throw Error(ErrorCode::InvalidInput, "order_tags and entries must be arrays");
    int n = static_cast<int>(ent.size());
    if (n == 0 || static_cast<int>(tags.size()) != n) throw Error(ErrorCode::InvalidInput, "one order tag per row");
    for (const auto& t : tags) d.order_tags.push_back(parse_tag(t));
    if (d.ring == Ring::OK)
        for (Tag t : d.order_tags)
            if (t != Tag::OK) throw Error(ErrorCode::InvalidInput, "R tags need ring r");
    d.entries = KMatrix(d.p, n, n);
    for (int r = 0; r < n; ++r) {
        if (!ent[r].is_array() || static_cast<int>(ent[r].size()) != n)
            throw Error(ErrorCode::InvalidInput, "entries must be square");
        for (int c = 0; c < n; ++c) d.entries(r, c) = kelem_from_json(d.p, ent[r][c]);
    }
    if (!d.entries.is_hermitian()) throw Error(ErrorCode::NonHermitian, "entries are not hermitian");
    return d;
}

std::string serialize_gram_document(const GramDocument& d) {
    json j;
    j["schema"] = d.schema;
    j["p"] = std::to_string(d.p);
    j["ring"] = ring_name(d.ring);
    if (d.prime) j["prime"] = std::to_string(*d.prime);
    j["precision"] = std::to_string(d.precision);
    json tags = json::array();
    for (Tag t : d.order_tags) tags.push_back(tag_name(t));
    j["order_tags"] = tags;
    j["entries"] = matrix_json(d.entries);
    return j.dump(2) + "\n";
}

GramDocument read_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IOError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IOError, "read failed for " + path);
    return parse_gram_document(ss.str());
}

GramDocument gram_document_of(const HermLattice& L, Ring ring) {
    GramDocument d;
    d.p = L.p();
    d.ring = ring;
    if (L.ctx.is_local()) d.prime = L.ctx.ell;
    d.precision = L.ctx.precision;
    d.order_tags = L.tags;
    d.entries = L.gram;
    return d;
}

json r2class_json(const R2Class& c) {
    return json{{"kind", "r2"}, {"label", c.label()}, {"r", std::to_string(c.r)}, {"s", std::to_string(c.s)},
                {"odd_diag", c.odd_diag}};
}

json symbol_json(const GenusSymbol& s) {
    json at2;
    if (const auto* l = std::get_if<LocalClassLabel>(&s.at_2))
        at2 = json{{"kind", "local"}, {"label", label_name(l->variant)}};
    else
        at2 = r2class_json(std::get<R2Class>(s.at_2));
    return json{{"p", std::to_string(s.p)},
                {"n", std::to_string(s.n)},
                {"ring", ring_name(s.ring)},
                {"det", s.det.str()},
                {"at_p", label_name(s.at_p.variant)},
                {"at_2", at2},
                {"norm", to_string(s.norm)}};
}

json sigma_json(const SigmaReport& r) {
    return json{{"p", std::to_string(r.p)},
                {"n", std::to_string(r.n)},
                {"nonempty", r.nonempty},
                {"forced_det", r.forced_det ? json(r.forced_det->str()) : json(nullptr)},
                {"sigma1", std::to_string(r.sigma1)},
                {"sigma2", r.sigma2 ? json(std::to_string(*r.sigma2)) : json("n/a")},
                {"total", std::to_string(r.total)}};
}

}  // namespace hermlat
