#include "lzdawg/block_tree.hpp"

#include <cassert>

namespace lzdawg {

BlockTree::BlockTree(const AlphabetCfg& cfg) : cfg_(cfg), nodes_(cfg.capacity()), blocks_(cfg.capacity()) {}

std::optional<MetaChar> BlockTree::parent(MetaChar a) const {
    auto it = parent_char_.find(a.value);
    if (it == parent_char_.end()) return std::nullopt;
    const unsigned head_shift = (cfg_.r - 1) * cfg_.bits_per_char;
    return MetaChar{(std::uint64_t{it->second} << head_shift) | (a.value >> cfg_.bits_per_char)};
}

unsigned BlockTree::distance_to_block(MetaChar a) const {
    unsigned d = 0;
    while (!is_block(a)) {
        auto p = parent(a);
        assert(p && "node without block ancestor");
        a = *p;
        ++d;
    }
    return d;
}

void BlockTree::update(std::uint64_t k, MetaChar a, std::optional<MetaChar> prev) {
    const std::uint64_t start = k - cfg_.r + 1;
    const unsigned offset = static_cast<unsigned>((start - 1) % cfg_.r);
    const bool seen = nodes_.get(a.value + 1);
    nodes_.set(a.value + 1);
    if (offset == 0) {
        blocks_.set(a.value + 1);
        return;
    }
    if (seen && is_block(a)) return;
    assert(prev.has_value());
    if (seen) {
        const unsigned x_c = distance_to_block(*parent(a)) + 1;
        if (offset >= x_c) return;
    }
    assert(prev->value != a.value);
    parent_char_[a.value] = char_at(*prev, 0, cfg_);
}

BlockTree::Located BlockTree::locate(MetaChar a) const {
    if (!nodes_.get(a.value + 1)) throw std::out_of_range("meta-character not present in block tree");
    unsigned d = 0;
    while (!is_block(a)) {
        a = *parent(a);
        ++d;
    }
    return {a, d};
}

}  // namespace lzdawg
