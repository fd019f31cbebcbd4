#include "lzdawg/dom_set.hpp"

#include <iterator>

namespace lzdawg {

bool DomSet::insert(Point p) {
    // The first point with x >= p.x has the largest y among them.
    auto it = by_x_.lower_bound(p.x);
    if (it != by_x_.end() && it->second >= p.y) return false;
    if (it != by_x_.end() && it->first == p.x) {
        by_y_.erase(it->second);
        it = by_x_.erase(it);
    }
    // Points with x <= p.x and y <= p.y form a contiguous run ending before `it`.
    while (it != by_x_.begin()) {
        auto prev = std::prev(it);
        if (prev->second > p.y) break;
        by_y_.erase(prev->second);
        it = by_x_.erase(prev);
    }
    by_x_.emplace(p.x, p.y);
    by_y_.emplace(p.y, p.x);
    return true;
}

std::optional<Point> DomSet::max_x_with_y_at_least(std::uint64_t q) const {
    auto it = by_y_.lower_bound(q);
    if (it == by_y_.end()) return std::nullopt;
    return Point{it->second, it->first};
}

std::optional<Point> DomSet::max_y_with_x_at_least(std::uint64_t p) const {
    auto it = by_x_.lower_bound(p);
    if (it == by_x_.end()) return std::nullopt;
    return Point{it->first, it->second};
}

std::vector<Point> DomSet::points() const {
    std::vector<Point> v;
    for (auto [x, y] : by_x_) v.push_back({x, y});
    return v;
}

}  // namespace lzdawg
