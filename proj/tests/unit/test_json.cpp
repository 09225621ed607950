#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hermlat/json_io.hpp"

using namespace hermlat;

namespace {

const char* kDoc = R"({
  "entries": [
    [["2", "0"], ["0", "1"]],
    [["0", "-1"], ["4", "0"]]
  ],
  "order_tags": ["R", "R"],
  "p": "7",
  "precision": "64",
  "prime": "2",
  "ring": "r",
  "schema": "hermlat.gram/1"
}
)";

}  // namespace

TEST_SUITE("json") {
    TEST_CASE("parse a gram document") {
        GramDocument d = parse_gram_document(kDoc);
        CHECK(d.p == 7);
        CHECK(d.ring == Ring::R);
        CHECK(d.prime == 2);
        CHECK(d.entries(0, 1) == KElem(7, 0, 1));
        CHECK(d.order_tags == std::vector<Tag>{Tag::R, Tag::R});
    }

    TEST_CASE("serialization is byte-identical for canonical documents") {
        std::string once = serialize_gram_document(parse_gram_document(kDoc));
        std::string twice = serialize_gram_document(parse_gram_document(once));
        CHECK(once == twice);
        CHECK(serialize_gram_document(parse_gram_document(twice)) == twice);
    }

    TEST_CASE("glued representatives round trip") {
        for (long p : {2L, 5L, 7L, 11L})
            for (Ring ring : {Ring::OK, Ring::R}) {
                if (ring == Ring::R && p % 4 != 3) continue;
                for (const auto& s : genus_enumerate(p, 4, ring)) {
                    HermLattice L = glue_lattice(s);
                    std::string text = serialize_gram_document(gram_document_of(L, ring));
                    GramDocument back = parse_gram_document(text);
                    CHECK(back.entries == L.gram);
                    CHECK(back.order_tags == L.tags);
                    CHECK_FALSE(back.prime.has_value());
                    CHECK(serialize_gram_document(back) == text);
                }
            }
    }

    TEST_CASE("rationals survive as strings") {
        GramDocument d;
        d.p = 3;
        d.order_tags = {Tag::OK};
        d.entries = KMatrix(3, 1, 1);
        d.entries(0, 0) = KElem(3, make_rational(-7, 3), make_rational(5, 2));
        std::string text = serialize_gram_document(d);
        CHECK(text.find("\"-7/3\"") != std::string::npos);
        CHECK(text.find("\"5/2\"") != std::string::npos);
        CHECK_THROWS_AS(parse_gram_document(text), Error);  // not hermitian
    }

    TEST_CASE("malformed documents") {
        auto bad = [](const std::string& s) {
            try {
                parse_gram_document(s);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::IOError;
        };
        std::string base = kDoc;
        auto with = [&](const std::string& from, const std::string& to) {
            std::string s = base;
            s.replace(s.find(from), from.size(), to);
            return s;
        };
        CHECK(bad("{") == ErrorCode::InvalidInput);
        CHECK(bad("[]") == ErrorCode::InvalidInput);
        CHECK(bad(with("\"p\": \"7\"", "\"p\": 7")) == ErrorCode::InvalidInput);
        CHECK(bad(with("\"p\": \"7\"", "\"p\": \"8\"")) == ErrorCode::InvalidInput);
        CHECK(bad(with("hermlat.gram/1", "hermlat.gram/9")) == ErrorCode::InvalidInput);
        CHECK(bad(with("\"ring\": \"r\"", "\"ring\": \"ok\"")) == ErrorCode::InvalidInput);
        CHECK(bad(with("\"precision\": \"64\"", "\"precision\": \"2\"")) == ErrorCode::InvalidInput);
        CHECK(bad(with("[\"R\", \"R\"]", "[\"R\"]")) == ErrorCode::InvalidInput);
        CHECK(bad(with("[\"0\", \"-1\"]", "[\"0\", \"1\"]")) == ErrorCode::NonHermitian);
        CHECK(bad(with("[\"4\", \"0\"]", "[\"x\", \"0\"]")) == ErrorCode::InvalidInput);
    }

    TEST_CASE("file reading") {
        CHECK_THROWS_AS(read_gram_file("/nonexistent/gram.json"), Error);
        std::string path = "hermlat_json_test.json";
        {
            std::ofstream out(path);
            out << kDoc;
        }
        CHECK(read_gram_file(path).p == 7);
        std::remove(path.c_str());
    }

    TEST_CASE("symbol and sigma payloads") {
        auto g = genus_enumerate(7, 4, Ring::R);
        nlohmann::json j = symbol_json(g[0]);
        CHECK(j["p"] == "7");
        CHECK(j["at_2"]["kind"] == "r2");
        CHECK(j["at_2"]["label"] == std::get<R2Class>(g[0].at_2).label());
        nlohmann::json s = sigma_json(sigma_report(7, 4));
        CHECK(s["sigma1"] == "1");
        CHECK(s["sigma2"] == "6");
        CHECK(sigma_json(sigma_report(13, 4))["sigma2"] == "n/a");
        auto ok = genus_enumerate(5, 2, Ring::OK);
        CHECK(symbol_json(ok[0])["at_2"]["kind"] == "local");
    }
}
