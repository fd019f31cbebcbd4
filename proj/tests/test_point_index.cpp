#include <doctest.h>

#include <random>
#include <set>

#include "lzdawg/point_index.hpp"

using namespace lzdawg;

TEST_CASE("basic queries") {
    PointSet ps(4, 16);
    CHECK_FALSE(ps.find_any({0, 10}, {0, 10}));
    CHECK(ps.insert({3, 5}));
    CHECK_FALSE(ps.insert({3, 5}));
    CHECK(ps.size() == 1);
    CHECK(ps.find_any({0, 10}, {0, 10}) == Point{3, 5});
    CHECK_FALSE(ps.find_any({4, 10}, {0, 10}));
    ps.insert({1, 1});
    ps.insert({2, 2});
    CHECK(ps.find_up_to({0, 100}, {0, 100}, 3).size() == 3);
    CHECK(ps.find_up_to({0, 100}, {0, 100}, 2).size() == 2);
    CHECK(ps.find_up_to({2, 2}, {0, 100}, 3) == std::vector<Point>{{2, 2}});
    CHECK_THROWS_AS(PointSet(3, 16), std::invalid_argument);
}

namespace {

/// Rectangles mostly aligned to digit prefixes, as the factorizer issues them,
/// with some arbitrary ones mixed in.
BitInterval random_interval(std::mt19937_64& rng, unsigned digit, unsigned total) {
    const std::uint64_t cap = std::uint64_t{1} << total;
    if (rng() % 4 == 0) {
        std::uint64_t a = rng() % cap, b = rng() % cap;
        if (a > b) std::swap(a, b);
        return {a, b};
    }
    const unsigned fixed = static_cast<unsigned>(rng() % (total / digit + 1));
    const unsigned free_bits = total - fixed * digit;
    const std::uint64_t lo = (rng() % cap) >> free_bits << free_bits;
    return {lo, lo + ((std::uint64_t{1} << free_bits) - 1)};
}

}  // namespace

TEST_CASE("agrees with a linear scan") {
    std::mt19937_64 rng(3);
    for (auto [digit, total] : {std::pair{2u, 8u}, {4u, 16u}, {8u, 24u}, {1u, 10u}}) {
        PointSet ps(digit, total);
        std::set<Point> ref;
        const std::uint64_t cap = std::uint64_t{1} << total;
        // Skewed coordinates so rectangles often contain several points.
        auto coord = [&] { return rng() % 2 ? rng() % cap : (rng() % 8) * (cap / 8); };
        for (int op = 0; op < 20000; ++op) {
            if (op % 3 == 0) {
                const Point p{coord(), coord()};
                CHECK(ps.insert(p) == ref.insert(p).second);
                continue;
            }
            const BitInterval xr = random_interval(rng, digit, total), yr = random_interval(rng, digit, total);
            std::size_t matches = 0;
            for (Point p : ref) matches += xr.contains(p.x) && yr.contains(p.y);
            const auto any = ps.find_any(xr, yr);
            REQUIRE(any.has_value() == (matches > 0));
            if (any) CHECK((ref.count(*any) && xr.contains(any->x) && yr.contains(any->y)));
            const auto some = ps.find_up_to(xr, yr, 3);
            CHECK(some.size() == std::min<std::size_t>(3, matches));
            CHECK(std::set<Point>(some.begin(), some.end()).size() == some.size());
            for (Point p : some) CHECK((ref.count(p) && xr.contains(p.x) && yr.contains(p.y)));
            // A predicate accepting only the largest x finds exactly that point.
            std::optional<Point> best;
            for (Point p : ref)
                if (xr.contains(p.x) && yr.contains(p.y) && (!best || p.x > best->x)) best = p;
            if (best) {
                const auto hit = ps.find_if(xr, yr, [&](Point p) { return p.x == best->x; });
                REQUIRE(hit.has_value());
                CHECK(hit->x == best->x);
            }
        }
        CHECK(ps.size() == ref.size());
    }
}
