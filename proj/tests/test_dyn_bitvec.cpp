#include <doctest.h>

#include <random>
#include <vector>

#include "lzdawg/dyn_bitvec.hpp"

using namespace lzdawg;

TEST_CASE("rank, select and pc against a plain vector") {
    std::mt19937_64 rng(7);
    for (std::uint64_t len : {1ull, 63ull, 64ull, 65ull, 4096ull, 10000ull, 1ull << 20}) {
        DynBitArray b(len);
        std::vector<bool> ref(len + 1, false);
        const int ops = static_cast<int>(std::min<std::uint64_t>(len * 2, 3000));
        for (int op = 0; op < ops; ++op) {
            const std::uint64_t i = 1 + rng() % len;
            const bool was = ref[i];
            CHECK(b.set(i) == !was);
            ref[i] = true;
            if (op % 16 != 0) continue;
            std::uint64_t x = 1 + rng() % len, y = 1 + rng() % len;
            if (x > y) std::swap(x, y);
            std::uint64_t expect = 0;
            for (std::uint64_t k = x; k <= y; ++k) expect += ref[k];
            CHECK(b.pc(x, y) == expect);
        }
        std::uint64_t ones = 0;
        for (std::uint64_t i = 1; i <= len; ++i) {
            CHECK(b.get(i) == ref[i]);
            if (ref[i]) {
                ++ones;
                CHECK(b.select(ones) == i);
            }
            if (i % 97 == 0 || i == len) CHECK(b.rank(i) == ones);
        }
        CHECK(b.ones() == ones);
        CHECK(b.rank(0) == 0);
        CHECK_THROWS_AS(b.select(0), std::out_of_range);
        CHECK_THROWS_AS(b.select(ones + 1), std::out_of_range);
    }
}

TEST_CASE("pages are allocated lazily") {
    DynBitArray b(std::uint64_t{1} << 32);
    CHECK(b.pages_allocated() == 0);
    b.set(5);
    b.set((std::uint64_t{1} << 32) - 3);
    CHECK(b.pages_allocated() == 2);
    CHECK(b.rank(std::uint64_t{1} << 32) == 2);
    CHECK(b.select(2) == (std::uint64_t{1} << 32) - 3);
    CHECK(b.pc(6, (std::uint64_t{1} << 32) - 4) == 0);
}

TEST_CASE("bounds") {
    DynBitArray b(100);
    CHECK_THROWS_AS(b.set(0), std::out_of_range);
    CHECK_THROWS_AS(b.set(101), std::out_of_range);
    CHECK_THROWS_AS(b.pc(5, 4), std::out_of_range);
    CHECK_THROWS_AS(DynBitArray(DynBitArray::kMaxLength + 1), std::length_error);
}
