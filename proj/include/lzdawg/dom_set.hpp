#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lzdawg/point_index.hpp"

namespace lzdawg {

/// Staircase of non-dominated points (no other point has both x and y at
/// least as large). Along increasing x the y values strictly decrease.
class DomSet {
public:
    /// Returns false when an existing point dominates p.
    bool insert(Point p);

    /// Among points with y >= q, the one with largest x.
    std::optional<Point> max_x_with_y_at_least(std::uint64_t q) const;
    /// Among points with x >= p, the one with largest y.
    std::optional<Point> max_y_with_x_at_least(std::uint64_t p) const;

    std::size_t size() const { return by_x_.size(); }
    bool empty() const { return by_x_.empty(); }
    std::vector<Point> points() const;

private:
    std::map<std::uint64_t, std::uint64_t> by_x_;  // x -> y
    std::map<std::uint64_t, std::uint64_t> by_y_;  // y -> x
};

}  // namespace lzdawg
