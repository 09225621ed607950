#include "cli.hpp"

#include <CLI11.hpp>

#include <future>
#include <ostream>
#include <set>
#include <sstream>

#include "acceptance.hpp"
#include "hermlat/json_io.hpp"
#include "hermlat/symbols.hpp"

namespace hermlat::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kSubcommands = {"exists",   "genera", "sigma",   "classify-local",
                                            "decompose", "glue",   "symbols", "selftest"};

void usage(const std::string& msg) { throw Error(ErrorCode::UsageError, msg); }

void allow_only(const Command& c, const std::set<std::string>& allowed, const std::set<std::string>& given) {
    for (const auto& g : given)
        if (!allowed.count(g)) usage("--" + g + " does not apply to " + c.subcommand);
}

void require(bool present, const std::string& flag, const std::string& sub) {
    if (!present) usage(sub + " needs --" + flag);
}

DetClass det_from_flag(long p, int det) { return det == 1 ? trivial_class(p) : det_class_of(Rational(2), p); }

std::string matrix_table(const KMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
        os << "]\n";
    }
    return os.str();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int negative(const Command& c, std::ostream& out, const std::string& reason, json payload = json::object()) {
    payload["ok"] = false;
    payload["reason"] = reason;
    if (c.json)
        emit(out, payload);
    else
        out << "result: false (" << reason << ")\n";
    return kExitNegative;
}

bool negative_code(ErrorCode code) { return exit_code_for(code) == kExitNegative; }

PseudoBasis tag_basis(const OrderChain& chain, const std::vector<Tag>& tags) {
    int n = static_cast<int>(tags.size());
    std::vector<KVec> gens;
    std::vector<int> idx;
    int o_index = chain.index_of_level(0);
    for (int i = 0; i < n; ++i) {
        KVec g(n, KElem(chain.d, 0));
        g[i] = KElem(chain.d, 1);
        gens.push_back(g);
        idx.push_back(tags[i] == Tag::R ? 1 : o_index);
    }
    return make_pseudo_basis(chain, gens, idx);
}

int cmd_exists(const Command& c, std::ostream& out) {
    Ring ring = c.ring.value_or(Ring::OK);
    int det = c.det.value_or(1);
    bool e = exists_modular(*c.p, *c.n, ring, det_from_flag(*c.p, det));
    json j{{"p", std::to_string(*c.p)},
           {"n", std::to_string(*c.n)},
           {"ring", ring_name(ring)},
           {"det", std::to_string(det)},
           {"exists", e}};
    if (!e && c.strict) return negative(c, out, "NoSuchGenus", j);
    if (c.json)
        emit(out, j);
    else
        out << "exists(p=" << *c.p << ", n=" << *c.n << ", ring=" << ring_name(ring) << ", det=[" << det
            << "]): " << (e ? "true" : "false") << "\n";
    return kExitOk;
}

std::vector<GenusSymbol> filtered_genera(const Command& c) {
    std::vector<GenusSymbol> all = genus_enumerate(*c.p, *c.n, c.ring.value_or(Ring::OK));
    if (!c.det) return all;
    DetClass want = det_from_flag(*c.p, *c.det);
    std::vector<GenusSymbol> out;
    for (auto& s : all)
        if (s.det == want) out.push_back(s);
    return out;
}

int cmd_genera(const Command& c, std::ostream& out) {
    std::vector<GenusSymbol> g = filtered_genera(c);
    if (g.empty() && c.strict) return negative(c, out, "NoSuchGenus", json{{"count", "0"}, {"genera", json::array()}});
    if (c.json) {
        json arr = json::array();
        for (const auto& s : g) arr.push_back(symbol_json(s));
        emit(out, json{{"count", std::to_string(g.size())}, {"genera", arr}});
    } else {
        out << g.size() << " genera\n";
        for (size_t i = 0; i < g.size(); ++i) out << "  " << (i + 1) << ". " << g[i].str() << "\n";
    }
    return kExitOk;
}

int cmd_sigma(const Command& c, std::ostream& out) {
    SigmaReport r = sigma_report(*c.p, *c.n);
    if (!r.nonempty && c.strict) return negative(c, out, "NoSuchGenus", sigma_json(r));
    if (c.json) {
        emit(out, sigma_json(r));
    } else {
        out << "sigma(p=" << r.p << ", n=" << r.n << "): " << (r.nonempty ? "nonempty" : "empty") << "\n";
        out << "  sigma1 = " << r.sigma1 << "\n";
        out << "  sigma2 = " << (r.sigma2 ? std::to_string(*r.sigma2) : "n/a") << "\n";
        out << "  total  = " << r.total << "\n";
        if (r.forced_det) out << "  forced det = " << r.forced_det->str() << "\n";
    }
    return kExitOk;
}

int cmd_classify_local(const Command& c, std::ostream& out) {
    GramDocument d = read_gram_file(*c.gram);
    if (!d.prime) usage("classify-local needs a document with a local prime");
    long p = d.p, ell = *d.prime;
    json j{{"p", std::to_string(p)}, {"prime", std::to_string(ell)}, {"ring", ring_name(d.ring)}};
    std::string text;
    try {
        if (d.ring == Ring::R && ell == 2) {
            if (p % 4 != 3) throw Error(ErrorCode::InvalidInput, "ring r needs p = 3 mod 4");
            OrderChain chain = OrderChain::r2(p, c.precision);
            R2Class cls = classify_unimodular_R2(chain, tag_basis(chain, d.order_tags), d.entries).first;
            j["class"] = r2class_json(cls);
            text = cls.label();
        } else {
            RingCtx ctx = RingCtx::local_ok(p, ell, c.precision);
            LocalClassLabel lab = classify_local(ctx, HermLattice(ctx, d.entries));
            j["class"] = json{{"kind", "local"}, {"label", label_name(lab.variant)}, {"n", std::to_string(lab.n)}};
            text = lab.str();
        }
    } catch (const Error& e) {
        if (negative_code(e.code())) return negative(c, out, error_name(e.code()), j);
        throw;
    }
    j["ok"] = true;
    if (c.json)
        emit(out, j);
    else
        out << "class at " << ell << ": " << text << "\n";
    return kExitOk;
}

int cmd_decompose(const Command& c, std::ostream& out) {
    GramDocument d = read_gram_file(*c.gram);
    long p = d.p;
    long ell = d.prime.value_or(2);
    bool r2 = d.ring == Ring::R;
    if (r2 && (ell != 2 || p % 4 != 3)) throw Error(ErrorCode::InvalidInput, "ring r decomposes at 2 with p = 3 mod 4");
    OrderChain chain = r2 ? OrderChain::r2(p, c.precision) : OrderChain::make(p, ell, 0, {0}, c.precision);
    PseudoBasis M = tag_basis(chain, d.order_tags);
    json j{{"p", std::to_string(p)}, {"prime", std::to_string(ell)}, {"ring", ring_name(d.ring)}};
    std::vector<DecompBlock> blocks;
    try {
        blocks = orthogonal_decompose(chain, M, d.entries);
    } catch (const Error& e) {
        if (negative_code(e.code())) return negative(c, out, error_name(e.code()), j);
        throw;
    }
    json arr = json::array();
    for (const auto& b : blocks) {
        json gens = json::array();
        for (const auto& g : b.generators) {
            json row = json::array();
            for (const auto& x : g) row.push_back(kelem_json(x));
            gens.push_back(row);
        }
        arr.push_back(json{{"order", chain.level(b.order_index) == 0 ? "OK" : "R"},
                           {"gram", matrix_json(b.gram)},
                           {"generators", gens}});
    }
    j["blocks"] = arr;
    j["ok"] = true;
    std::string cls;
    if (r2) {
        R2Class k = classify_unimodular_R2(chain, M, d.entries).first;
        j["class"] = r2class_json(k);
        cls = k.label();
    }
    if (c.json) {
        emit(out, j);
    } else {
        out << blocks.size() << " blocks at " << ell << (cls.empty() ? "" : ", class " + cls) << "\n";
        for (const auto& b : blocks)
            out << (chain.level(b.order_index) == 0 ? "OK" : "R") << " block\n" << matrix_table(b.gram);
    }
    return kExitOk;
}

int cmd_glue(const Command& c, std::ostream& out) {
    std::vector<GenusSymbol> g = filtered_genera(c);
    if (g.empty()) return negative(c, out, "NoSuchGenus");
    if (c.index < 1 || c.index > static_cast<int>(g.size()))
        usage("--index must be between 1 and " + std::to_string(g.size()));
    const GenusSymbol& s = g[c.index - 1];
    HermLattice L;
    try {
        L = glue_lattice(s);
    } catch (const Error& e) {
        if (negative_code(e.code())) return negative(c, out, error_name(e.code()), json{{"symbol", symbol_json(s)}});
        throw;
    }
    L.ctx.precision = c.precision;
    VerifyResult v = verify_genus(L, s);
    if (c.json) {
        json doc = json::parse(serialize_gram_document(gram_document_of(L, s.ring)));
        json j{{"symbol", symbol_json(s)}, {"gram", doc}, {"verified", v.ok}};
        if (!v.ok) j["reason"] = v.reason;
        emit(out, j);
    } else {
        out << "symbol: " << s.str() << "\n";
        out << "tags:";
        for (Tag t : L.tags) out << " " << tag_name(t);
        out << "\ngram:\n" << matrix_table(L.gram);
        out << "verified: " << (v.ok ? "true" : "false (" + v.reason + ")") << "\n";
    }
    return v.ok ? kExitOk : kExitNegative;
}

int cmd_symbols(const Command& c, std::ostream& out) {
    long p = *c.p;
    json j{{"p", std::to_string(p)},
           {"artin_2", std::to_string(artin(p, 2))},
           {"artin_p", std::to_string(artin(p, p))}};
    std::ostringstream os;
    os << "artin(" << p << ", 2) = " << artin(p, 2) << "\n";
    os << "artin(" << p << ", " << p << ") = " << artin(p, p) << "\n";
    if (c.q) {
        Rational q = parse_rational(*c.q);
        if (sgn(q) == 0) usage("--q must be nonzero");
        Rational mp(-p);
        json hs = json::object();
        for (long v : hilbert_support(q, mp)) {
            std::string place = v == kInfinity ? "inf" : std::to_string(v);
            int h = hilbert(q, mp, v);
            hs[place] = std::to_string(h);
            os << "hilbert(" << to_string(q) << ", " << -p << ", " << place << ") = " << h << "\n";
        }
        j["q"] = to_string(q);
        j["hilbert"] = hs;
        if (sgn(q) > 0) {
            DetClass dc = det_class_of(q, p);
            j["det_class"] = dc.str();
            os << "det class of " << to_string(q) << " = " << dc.str() << "\n";
        }
    }
    if (c.json)
        emit(out, j);
    else
        out << os.str();
    return kExitOk;
}

int cmd_selftest(const Command& c, std::ostream& out) {
    std::vector<acceptance::CriterionResult> results;
    if (c.parallel) {
        std::vector<std::future<acceptance::CriterionResult>> fs;
        for (int id = 1; id <= 8; ++id)
            fs.push_back(std::async(std::launch::async, [id, &c] { return acceptance::run_criterion(id, c.seed); }));
        for (auto& f : fs) results.push_back(f.get());
    } else {
        results = acceptance::run_all(c.seed);
    }
    bool all = true;
    json arr = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        if (!c.json) out << acceptance::format_line(r) << "\n";
        std::ostringstream secs;
        secs.setf(std::ios::fixed);
        secs.precision(3);
        secs << r.seconds;
        arr.push_back(json{{"id", std::to_string(r.id)},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", secs.str()}});
    }
    if (c.json) emit(out, json{{"criteria", arr}, {"pass", all}});
    return all ? kExitOk : kExitNegative;
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::UsageError:
        case ErrorCode::InvalidInput:
        case ErrorCode::NonHermitian: return kExitUsage;
        case ErrorCode::IOError: return kExitIO;
        default: return kExitNegative;
    }
}

Command parse_command(const std::vector<std::string>& argv) {
    if (argv.empty()) usage("missing subcommand");
    Command c;
    c.subcommand = argv[0];
    if (!kSubcommands.count(c.subcommand)) usage("unknown subcommand " + c.subcommand);

    CLI::App app{"hermlat " + c.subcommand};
    app.set_help_flag();
    app.allow_extras(false);
    long p = 0, precision = 64, index = 1;
    int n = 0, det = 0;
    std::string ring, gram, q;
    uint64_t seed = c.seed;
    auto* op = app.add_option("--p", p);
    auto* on = app.add_option("--n", n);
    auto* oring = app.add_option("--ring", ring);
    auto* odet = app.add_option("--det", det);
    auto* ogram = app.add_option("--gram", gram);
    auto* oprec = app.add_option("--precision", precision);
    auto* ojson = app.add_flag("--json", c.json);
    auto* ostrict = app.add_flag("--strict", c.strict);
    auto* oseed = app.add_option("--seed", seed);
    auto* oindex = app.add_option("--index", index);
    auto* oq = app.add_option("--q", q);
    auto* opar = app.add_flag("--parallel", c.parallel);

    std::vector<std::string> rest(argv.begin() + 1, argv.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        usage(e.what());
    }

    std::set<std::string> given;
    const std::pair<CLI::Option*, const char*> opts[] = {
        {op, "p"},       {on, "n"},         {oring, "ring"},   {odet, "det"},   {ogram, "gram"},
        {oprec, "precision"}, {ojson, "json"}, {ostrict, "strict"}, {oseed, "seed"}, {oindex, "index"},
        {oq, "q"},       {opar, "parallel"}};
    for (const auto& [o, name] : opts)
        if (o->count() > 0) given.insert(name);

    if (given.count("p")) {
        if (!is_prime(p)) usage("--p must be prime, got " + std::to_string(p));
        c.p = p;
    }
    if (given.count("n")) {
        if (n < 1 || n > 64) usage("--n must be between 1 and 64");
        c.n = n;
    }
    if (given.count("ring")) {
        if (ring != "ok" && ring != "r") usage("--ring must be ok or r");
        c.ring = parse_ring(ring);
    }
    if (given.count("det")) {
        if (det != 1 && det != 2) usage("--det must be 1 or 2");
        c.det = det;
    }
    if (given.count("gram")) c.gram = gram;
    if (precision < 4 || precision > 4096) usage("--precision must be between 4 and 4096");
    c.precision = static_cast<int>(precision);
    c.seed = seed;
    if (given.count("index")) {
        if (index < 1) usage("--index must be positive");
        c.index = static_cast<int>(index);
    }
    if (given.count("q")) {
        try {
            parse_rational(q);
        } catch (const Error&) {
            usage("--q must be a rational number");
        }
        c.q = q;
    }

    const std::string& s = c.subcommand;
    if (s == "exists" || s == "genera" || s == "sigma" || s == "glue") {
        require(c.p.has_value(), "p", s);
        require(c.n.has_value(), "n", s);
    }
    if (s == "exists" || s == "genera") allow_only(c, {"p", "n", "ring", "det", "json", "strict"}, given);
    if (s == "sigma") allow_only(c, {"p", "n", "json", "strict"}, given);
    if (s == "glue") allow_only(c, {"p", "n", "ring", "det", "index", "precision", "json", "strict"}, given);
    if (s == "classify-local" || s == "decompose") {
        require(c.gram.has_value(), "gram", s);
        allow_only(c, {"gram", "precision", "json", "strict"}, given);
    }
    if (s == "symbols") {
        require(c.p.has_value(), "p", s);
        allow_only(c, {"p", "q", "json", "strict"}, given);
    }
    if (s == "selftest") allow_only(c, {"seed", "parallel", "json", "strict"}, given);
    return c;
}

int run(const Command& c, std::ostream& out, std::ostream&) {
    const std::string& s = c.subcommand;
    if (s == "exists") return cmd_exists(c, out);
    if (s == "genera") return cmd_genera(c, out);
    if (s == "sigma") return cmd_sigma(c, out);
    if (s == "classify-local") return cmd_classify_local(c, out);
    if (s == "decompose") return cmd_decompose(c, out);
    if (s == "glue") return cmd_glue(c, out);
    if (s == "symbols") return cmd_symbols(c, out);
    if (s == "selftest") return cmd_selftest(c, out);
    usage("unknown subcommand " + s);
    return kExitUsage;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    try {
        return run(parse_command(argv), out, err);
    } catch (const Error& e) {
        err << "hermlat: " << e.what() << "\n";
        if (e.code() == ErrorCode::UsageError)
            err << "usage: hermlat {exists|genera|sigma|classify-local|decompose|glue|symbols|selftest} [flags]\n";
        return exit_code_for(e.code());
    }
}

}  // namespace hermlat::cli
