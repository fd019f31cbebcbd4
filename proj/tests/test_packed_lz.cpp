#include <doctest.h>

#include <cstdlib>
#include <random>

#include "lzdawg/block_tree.hpp"
#include "lzdawg/dawg.hpp"
#include "lzdawg/oracle.hpp"
#include "lzdawg/packed_lz.hpp"
#include "support.hpp"

using namespace lzdawg;
using namespace lzdawg::testing;

namespace {

std::vector<Factor> chunked(const Text& t, PackedConfig cfg, std::mt19937_64& rng) {
    PackedFactorizer f(cfg);
    std::vector<Factor> out;
    std::size_t i = 0;
    while (i < t.size()) {
        const std::size_t len = std::min<std::size_t>(t.size() - i, rng() % 40);
        auto part = f.push(std::span<const Code>(t.data() + i, len));
        out.insert(out.end(), part.begin(), part.end());
        i += len;
    }
    auto rest = f.finish();
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace

TEST_CASE("running example for several block sizes") {
    const Text t = from_string("abaabababaaaaabbabab");
    const std::vector<std::uint64_t> want = {1, 1, 1, 3, 4, 4, 1, 5};
    for (unsigned r = 1; r <= 7; ++r) {
        PackedConfig cfg;
        cfg.sigma = 256;
        cfg.block_chars = std::min(r, 4u);
        if (r > 4) {
            // the same string over a binary alphabet
            cfg.sigma = 2;
            cfg.block_chars = r;
        }
        Text s = t;
        if (cfg.sigma == 2)
            for (auto& c : s) c = c == 'a' ? 0 : 1;
        const auto fs = PackedFactorizer::factorize(s, cfg);
        CHECK(factor_lengths(fs) == want);
        CHECK(first_invalid_factor(fs, s) == fs.size());
    }
    CHECK(factor_lengths(PackedFactorizer::factorize(t)) == want);
}

TEST_CASE("empty input and single characters") {
    CHECK(PackedFactorizer::factorize(Text{}).empty());
    CHECK(PackedFactorizer::factorize(Text{5}) == std::vector<Factor>{Factor::literal(1, 5)});
    PackedFactorizer f;
    CHECK(f.finish().empty());
    CHECK(f.stats().z == 0);
    CHECK(f.stats().n == 0);
}

TEST_CASE("agrees with the reference on random and structured strings") {
    std::mt19937_64 rng(77);
    for (const auto& [text, sigma] : corpus(123, 600, 600)) {
        PackedConfig cfg;
        cfg.sigma = sigma;
        if (rng() % 2) cfg.block_chars = 1 + rng() % std::max(1u, 24 / AlphabetCfg::bits_for(sigma));
        cfg.initial_capacity = std::uint64_t{1} << (rng() % 14);
        const auto fs = PackedFactorizer::factorize(text, cfg);
        REQUIRE_MESSAGE(agrees(fs, naive_factorize(text), text), "n=" << text.size() << " sigma=" << sigma);
    }
}

TEST_CASE("chunked input commits the same factors") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 150; ++i) {
        const unsigned sigma = i % 2 ? 4 : 2;
        const Text t = random_text(rng, rng() % 500, sigma);
        PackedConfig cfg;
        cfg.sigma = sigma;
        cfg.initial_capacity = 16;
        CHECK(chunked(t, cfg, rng) == PackedFactorizer::factorize(t, cfg));
    }
}

TEST_CASE("factors are committed before the end of input") {
    std::mt19937_64 rng(4);
    const Text t = random_text(rng, 5000, 4);
    PackedConfig cfg;
    cfg.sigma = 4;
    PackedFactorizer f(cfg);
    const auto early = f.push(t);
    CHECK(early.size() > 100);
    const auto rest = f.finish();
    CHECK(rest.size() < 10);
}

TEST_CASE("rebuilds do not change factor lengths") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 40; ++i) {
        const Text t = random_text(rng, 3000, 4);
        PackedConfig small, big;
        small.sigma = big.sigma = 4;
        small.initial_capacity = 1 << 10;
        big.initial_capacity = 1 << 12;
        PackedFactorizer f(small);
        f.push(t);
        f.finish();
        CHECK(f.stats().rebuilds >= 1);
        CHECK(factor_lengths(PackedFactorizer::factorize(t, small)) == factor_lengths(PackedFactorizer::factorize(t, big)));
    }
}

TEST_CASE("statistics") {
    const Text t = from_string("abaabababaaaaabbabab");
    PackedConfig cfg;
    cfg.block_chars = 2;
    PackedFactorizer f(cfg);
    f.push(t);
    f.finish();
    const auto s = f.stats();
    CHECK(s.n == 20);
    CHECK(s.z == 8);
    CHECK(s.r == 2);
    CHECK(s.dawg_symbols == f.dawg().symbol_count());
    CHECK(s.dawg_states == f.dawg().state_count());
    CHECK(s.short_factors + s.long_factors + s.tail_factors >= s.z - s.tail_factors);
    CHECK(f.alphabet().r == 2);
    CHECK(f.block_tree().nodes().ones() > 0);
}

TEST_CASE("errors") {
    PackedConfig cfg;
    cfg.sigma = 4;
    PackedFactorizer f(cfg);
    const Code bad[] = {1, 4};
    CHECK_THROWS_AS(f.push(bad), AlphabetError);
    f.finish();
    const Code ok[] = {1};
    CHECK_THROWS_AS(f.push(ok), std::logic_error);

    PackedConfig wide;
    wide.block_chars = 5;  // 40 bits per block
    CHECK_THROWS_AS(PackedFactorizer{wide}, ConfigError);
    wide.block_chars = 0;
    CHECK_THROWS_AS(PackedFactorizer{wide}, ConfigError);
}

TEST_CASE("memory budget") {
    PackedConfig cfg;
    cfg.sigma = 4;
    cfg.initial_capacity = 64;
    cfg.memory_budget = 64;
    PackedFactorizer f(cfg);
    std::mt19937_64 rng(1);
    const Text t = random_text(rng, 4000, 4);
    CHECK_THROWS_AS((f.push(t), f.finish()), ConfigError);

    setenv("LZDAWG_MEMORY_BUDGET", "64", 1);
    PackedConfig from_env;
    from_env.sigma = 4;
    from_env.initial_capacity = 64;
    CHECK_THROWS_AS(PackedFactorizer::factorize(t, from_env), ConfigError);
    unsetenv("LZDAWG_MEMORY_BUDGET");
    CHECK_NOTHROW(PackedFactorizer::factorize(t, from_env));
}
