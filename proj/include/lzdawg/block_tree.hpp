#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include <absl/container/flat_hash_map.h>

#include "lzdawg/alphabet.hpp"
#include "lzdawg/dyn_bitvec.hpp"

namespace lzdawg {

/// Tree over the meta-characters seen so far, used to find a block-aligned
/// meta-character that overlaps a given one.
///
/// The parent B of a node A satisfies B[2..r] = A[1..r-1] and is stored as the
/// single character B[1]. Every node is block-aligned itself or has a
/// block-aligned ancestor no further away than the smallest in-block offset
/// of any occurrence of the node.
class BlockTree {
public:
    struct Located {
        MetaChar block;
        unsigned shift;
    };

    explicit BlockTree(const AlphabetCfg& cfg);

    /// Registers the window A = S[k-r+1..k]; prev is S[k-r..k-1] when k > r.
    void update(std::uint64_t k, MetaChar a, std::optional<MetaChar> prev);

    /// Walks parents of a seen A to the nearest block-aligned node.
    Located locate(MetaChar a) const;

    /// Membership of windows seen so far (the M array).
    const DynBitArray& nodes() const { return nodes_; }
    bool is_block(MetaChar a) const { return blocks_.get(a.value + 1); }
    std::optional<MetaChar> parent(MetaChar a) const;

    std::size_t parent_entries() const { return parent_char_.size(); }

private:
    unsigned distance_to_block(MetaChar a) const;

    AlphabetCfg cfg_;
    DynBitArray nodes_;
    DynBitArray blocks_;
    absl::flat_hash_map<std::uint64_t, Code> parent_char_;
};

}  // namespace lzdawg
