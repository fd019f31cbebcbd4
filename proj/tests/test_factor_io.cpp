#include <doctest.h>

#include <random>
#include <sstream>

#include "lzdawg/factor_io.hpp"
#include "lzdawg/oracle.hpp"
#include "support.hpp"

using namespace lzdawg;
using namespace lzdawg::testing;

namespace {

std::string encode(const std::vector<Factor>& fs, FactorFormat fmt) {
    std::ostringstream os;
    FactorWriter w(os, fmt);
    w.write(fs);
    return os.str();
}

std::string expect_error(const std::string& data) {
    try {
        read_factors(data);
    } catch (const FormatError& e) {
        return e.what();
    }
    return "no error";
}

}  // namespace

TEST_CASE("record formats") {
    const std::vector<Factor> fs = {Factor::literal(1, 'a'), Factor::copy(2, 1, 4)};
    CHECK(encode(fs, FactorFormat::Text) == "L 97\nC 1 4\n");
    CHECK(encode(fs, FactorFormat::Jsonl) == "{\"kind\":\"literal\",\"byte\":97}\n{\"kind\":\"copy\",\"src\":1,\"len\":4}\n");
    CHECK(encode(fs, FactorFormat::Binary) == std::string("LZF1\x00\x61\x01\x01\x04", 9));
    CHECK(encode({Factor::literal(1, 0), Factor::copy(2, 1, 300)}, FactorFormat::Binary) ==
          std::string("LZF1\x00\x00\x01\x01\xac\x02", 10));
    CHECK(encode({}, FactorFormat::Text).empty());
    CHECK(parse_format("jsonl") == FactorFormat::Jsonl);
    CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("all formats round-trip and decode to the same bytes") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const Text t = random_text(rng, rng() % 300, i % 2 ? 256 : 3);
        const auto fs = naive_factorize(t);
        const std::string plain(t.begin(), t.end());
        for (auto fmt : {FactorFormat::Text, FactorFormat::Jsonl, FactorFormat::Binary}) {
            const auto back = read_factors(encode(fs, fmt));
            CHECK(back == fs);
            CHECK(decode_factors(back) == plain);
        }
    }
}

TEST_CASE("overlapping copies decode left to right") {
    CHECK(decode_factors(read_factors("L 97\nC 1 5\n")) == "aaaaaa");
    CHECK(decode_factors(read_factors("L 7\n")) == "\x07");
    CHECK(decode_factors(read_factors("")).empty());
}

TEST_CASE("malformed input reports the location") {
    CHECK(expect_error("L 97\nC 2 1\n").find("line 2") != std::string::npos);
    CHECK(expect_error("L 97\nX 1\n").find("line 2") != std::string::npos);
    CHECK(expect_error("L 300\n").find("line 1") != std::string::npos);
    CHECK(expect_error("L 97\nC 1\n").find("line 2") != std::string::npos);
    CHECK(expect_error("L 97 5\n").find("line 1") != std::string::npos);
    CHECK(expect_error("{\"kind\":\"literal\",\"byte\":97}\n{\"kind\":\"copy\",\"src\":0,\"len\":1}\n").find("line 2") !=
          std::string::npos);
    CHECK(expect_error("{\"kind\":\"literal\"}\n").find("line 1") != std::string::npos);
    CHECK(expect_error("{\"kind\":\"literal\",\"byte\":97}\n{oops\n").find("line 2") != std::string::npos);
    CHECK(expect_error(std::string("LZF1\x02", 5)).find("byte 4") != std::string::npos);
    CHECK(expect_error(std::string("LZF1\x01\x81", 6)).find("truncated") != std::string::npos);
    CHECK(expect_error(std::string("LZF1\x00\x61\x01\x02\x01", 9)).find("out of range") != std::string::npos);
    CHECK(expect_error("C 1 0\n").find("line 1") != std::string::npos);
}
