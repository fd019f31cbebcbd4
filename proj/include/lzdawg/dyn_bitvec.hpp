#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace lzdawg {

/// Bit array over positions 1..length where bits only ever turn on.
///
/// Pages of 4096 bits are allocated on first write, so an array spanning a
/// large meta-character space costs memory proportional to the pages touched.
/// Page popcounts live in a Fenwick tree; inside a page eight 512-bit block
/// counters bound the popcount work of rank to eight words.
class DynBitArray {
public:
    static constexpr std::uint64_t kPageBits = 4096;
    static constexpr std::uint64_t kMaxLength = std::uint64_t{1} << 34;

    explicit DynBitArray(std::uint64_t length = 0);

    std::uint64_t length() const { return length_; }
    std::uint64_t ones() const { return ones_; }

    /// Sets bit i (1-based); returns true when the bit was previously 0.
    bool set(std::uint64_t i);
    bool get(std::uint64_t i) const;
    /// Set bits in [1..i]; rank(0) = 0.
    std::uint64_t rank(std::uint64_t i) const;
    /// Position of the j-th set bit (1-based j).
    std::uint64_t select(std::uint64_t j) const;
    /// Set bits in [x..y].
    std::uint64_t pc(std::uint64_t x, std::uint64_t y) const;

    std::size_t pages_allocated() const { return pages_allocated_; }

private:
    struct Page {
        std::array<std::uint64_t, kPageBits / 64> words{};
        std::array<std::uint16_t, 8> block_ones{};
    };

    void check_position(std::uint64_t i) const;
    std::uint64_t page_prefix(std::uint64_t page_count) const;

    std::uint64_t length_ = 0;
    std::uint64_t ones_ = 0;
    std::size_t pages_allocated_ = 0;
    std::vector<std::unique_ptr<Page>> pages_;
    std::vector<std::uint32_t> fenwick_;
};

}  // namespace lzdawg
