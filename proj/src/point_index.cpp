#include "lzdawg/point_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace lzdawg {

PointSet::PointSet(unsigned level_bits, unsigned total_bits) : level_bits_(level_bits) {
    if (level_bits == 0 || total_bits == 0 || total_bits % level_bits != 0)
        throw std::invalid_argument("point set digit width must divide the coordinate width");
    levels_ = total_bits / level_bits;
    // Keys pack the prefix next to its level.
    if (total_bits > 58) throw std::invalid_argument("point set coordinates wider than 58 bits are not supported");
}

std::uint64_t PointSet::key(unsigned level, std::uint64_t x) const {
    const unsigned drop = (levels_ - level) * level_bits_;
    const std::uint64_t prefix = drop >= 64 ? 0 : x >> drop;
    return (prefix << 6) | level;
}

void PointSet::index(Point p) {
    for (unsigned level = 1; level <= top_level(); ++level) by_prefix_.emplace(key(level, p.x), p.y, p.x);
}

bool PointSet::insert(Point p) {
    if (size_ < kSmall) {
        if (std::find(small_.begin(), small_.end(), p) != small_.end()) return false;
        small_.push_back(p);
        ++size_;
        return true;
    }
    if (size_ == kSmall) {
        for (Point q : small_) index(q);
        small_.clear();
        small_.shrink_to_fit();
    }
    if (by_prefix_.contains({key(top_level(), p.x), p.y, p.x})) return false;
    index(p);
    ++size_;
    return true;
}

template <class F>
bool PointSet::visit(BitInterval xr, BitInterval yr, F&& f) const {
    if (xr.lo > xr.hi || yr.lo > yr.hi) return false;
    if (size_ <= kSmall) {
        for (Point p : small_)
            if (xr.contains(p.x) && yr.contains(p.y) && f(p)) return true;
        return false;
    }
    // Split xr into maximal aligned digit-prefix blocks; the whole range goes digit by digit.
    std::uint64_t lo = xr.lo;
    for (;;) {
        unsigned level = levels_;
        while (level > 1) {
            const unsigned width = (levels_ - level + 1) * level_bits_;
            if (width >= 64) break;
            const std::uint64_t span = std::uint64_t{1} << width;
            if (lo % span != 0 || lo + (span - 1) > xr.hi || lo + (span - 1) < lo) break;
            --level;
        }
        const unsigned width = (levels_ - level) * level_bits_;
        const std::uint64_t last = width >= 64 ? ~std::uint64_t{0} : lo + ((std::uint64_t{1} << width) - 1);
        // Below the deepest indexed level, filter the enclosing prefix.
        const std::uint64_t k = key(std::min(level, top_level()), lo);
        for (auto p = by_prefix_.lower_bound({k, yr.lo, 0});
             p != by_prefix_.end() && std::get<0>(*p) == k && std::get<1>(*p) <= yr.hi; ++p) {
            const std::uint64_t x = std::get<2>(*p);
            if (x >= lo && x <= last && f(Point{x, std::get<1>(*p)})) return true;
        }
        if (last >= xr.hi) return false;
        lo = last + 1;
    }
}

std::optional<Point> PointSet::find_any(BitInterval xr, BitInterval yr) const {
    std::optional<Point> hit;
    visit(xr, yr, [&](Point p) {
        hit = p;
        return true;
    });
    return hit;
}

std::vector<Point> PointSet::find_up_to(BitInterval xr, BitInterval yr, std::size_t k) const {
    std::vector<Point> out;
    if (k == 0) return out;
    visit(xr, yr, [&](Point p) {
        out.push_back(p);
        return out.size() >= k;
    });
    return out;
}

std::optional<Point> PointSet::find_if(BitInterval xr, BitInterval yr, const std::function<bool(Point)>& accept) const {
    std::optional<Point> hit;
    visit(xr, yr, [&](Point p) {
        if (!accept(p)) return false;
        hit = p;
        return true;
    });
    return hit;
}

}  // namespace lzdawg
