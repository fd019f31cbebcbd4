#include "lzdawg/dyn_bitvec.hpp"

#include <bit>
#include <string>

namespace lzdawg {

DynBitArray::DynBitArray(std::uint64_t length) : length_(length) {
    if (length > kMaxLength)
        throw std::length_error("bit array of " + std::to_string(length) + " bits exceeds the supported range");
    const std::uint64_t page_count = (length + kPageBits - 1) / kPageBits;
    pages_.resize(page_count);
    fenwick_.assign(page_count + 1, 0);
}

void DynBitArray::check_position(std::uint64_t i) const {
    if (i == 0 || i > length_)
        throw std::out_of_range("bit position " + std::to_string(i) + " outside [1, " + std::to_string(length_) + "]");
}

bool DynBitArray::set(std::uint64_t i) {
    check_position(i);
    const std::uint64_t bit = i - 1;
    const std::uint64_t page = bit / kPageBits;
    auto& p = pages_[page];
    if (!p) {
        p = std::make_unique<Page>();
        ++pages_allocated_;
    }
    const std::uint64_t off = bit % kPageBits;
    std::uint64_t& w = p->words[off / 64];
    const std::uint64_t m = std::uint64_t{1} << (63 - off % 64);
    if (w & m) return false;
    w |= m;
    ++p->block_ones[off / 512];
    ++ones_;
    for (std::uint64_t k = page + 1; k < fenwick_.size(); k += k & (~k + 1)) ++fenwick_[k];
    return true;
}

bool DynBitArray::get(std::uint64_t i) const {
    check_position(i);
    const std::uint64_t bit = i - 1;
    const auto& p = pages_[bit / kPageBits];
    if (!p) return false;
    const std::uint64_t off = bit % kPageBits;
    return (p->words[off / 64] >> (63 - off % 64)) & 1;
}

std::uint64_t DynBitArray::page_prefix(std::uint64_t page_count) const {
    std::uint64_t s = 0;
    for (std::uint64_t k = page_count; k > 0; k -= k & (~k + 1)) s += fenwick_[k];
    return s;
}

std::uint64_t DynBitArray::rank(std::uint64_t i) const {
    if (i == 0) return 0;
    check_position(i);
    const std::uint64_t bit = i - 1;
    const std::uint64_t page = bit / kPageBits;
    std::uint64_t r = page_prefix(page);
    const auto& p = pages_[page];
    if (!p) return r;
    const std::uint64_t off = bit % kPageBits;
    const std::uint64_t block = off / 512;
    for (std::uint64_t b = 0; b < block; ++b) r += p->block_ones[b];
    const std::uint64_t last_word = off / 64;
    for (std::uint64_t w = block * 8; w < last_word; ++w) r += std::popcount(p->words[w]);
    const unsigned keep = static_cast<unsigned>(off % 64) + 1;
    const std::uint64_t tail = p->words[last_word] >> (64 - keep);
    return r + std::popcount(tail);
}

std::uint64_t DynBitArray::select(std::uint64_t j) const {
    if (j == 0 || j > ones_)
        throw std::out_of_range("select(" + std::to_string(j) + ") with " + std::to_string(ones_) + " set bits");
    // Fenwick descent to the page holding the j-th one.
    std::uint64_t pos = 0;
    std::uint64_t rem = j;
    std::uint64_t step = std::bit_floor(fenwick_.size() - 1 == 0 ? std::uint64_t{1} : fenwick_.size() - 1);
    for (; step > 0; step >>= 1) {
        const std::uint64_t nxt = pos + step;
        if (nxt < fenwick_.size() && fenwick_[nxt] < rem) {
            pos = nxt;
            rem -= fenwick_[nxt];
        }
    }
    const auto& p = pages_[pos];
    std::uint64_t block = 0;
    while (p->block_ones[block] < rem) rem -= p->block_ones[block++];
    std::uint64_t w = block * 8;
    for (;; ++w) {
        const auto c = static_cast<std::uint64_t>(std::popcount(p->words[w]));
        if (c >= rem) break;
        rem -= c;
    }
    std::uint64_t word = p->words[w];
    unsigned bit = 0;
    for (;; ++bit) {
        if ((word >> (63 - bit)) & 1) {
            if (--rem == 0) break;
        }
    }
    return pos * kPageBits + w * 64 + bit + 1;
}

std::uint64_t DynBitArray::pc(std::uint64_t x, std::uint64_t y) const {
    if (x == 0 || x > y || y > length_)
        throw std::out_of_range("pc interval [" + std::to_string(x) + ", " + std::to_string(y) + "] invalid");
    return rank(y) - rank(x - 1);
}

}  // namespace lzdawg
