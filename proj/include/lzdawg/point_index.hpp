#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include <absl/container/btree_set.h>

#include "lzdawg/alphabet.hpp"

namespace lzdawg {

struct Point {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    friend constexpr auto operator<=>(Point, Point) = default;
};

/// Insert-only planar point set with rectangular witness queries.
///
/// Coordinates are `total_bits` wide and read as strings of `level_bits`
/// digits. Small sets are scanned directly. Larger ones index every x-prefix
/// of whole digits, each prefix holding its points ordered by y, so a query
/// whose x-range is the set of values sharing a digit prefix costs one
/// ordered probe. Other x-ranges are split into such
/// prefixes.
class PointSet {
public:
    explicit PointSet(unsigned level_bits = 8, unsigned total_bits = 56);

    /// Returns false when the point was already present.
    bool insert(Point p);
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    std::optional<Point> find_any(BitInterval xr, BitInterval yr) const;
    std::vector<Point> find_up_to(BitInterval xr, BitInterval yr, std::size_t k) const;

    /// Visits matches until the visitor returns true; returns that point.
    std::optional<Point> find_if(BitInterval xr, BitInterval yr, const std::function<bool(Point)>& accept) const;

private:
    using Entry = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;  // (prefix key, y, x)

    std::uint64_t key(unsigned level, std::uint64_t x) const;
    /// Deepest indexed prefix length; exact x is left to filtering.
    unsigned top_level() const { return levels_ > 1 ? levels_ - 1 : 1; }
    void index(Point p);
    template <class F>
    bool visit(BitInterval xr, BitInterval yr, F&& f) const;

    static constexpr std::size_t kSmall = 24;

    unsigned level_bits_;
    unsigned levels_;
    std::size_t size_ = 0;
    std::vector<Point> small_;
    absl::btree_set<Entry> by_prefix_;
};

}  // namespace lzdawg
