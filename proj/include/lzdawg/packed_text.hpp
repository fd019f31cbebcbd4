#pragma once

#include <cstdint>
#include <vector>

#include "lzdawg/alphabet.hpp"

namespace lzdawg {

/// Append-only character sequence stored at bits_per_char bits per character.
/// Any window of up to 63 bits is read with two word loads.
class PackedText {
public:
    explicit PackedText(unsigned bits_per_char = 8) : bpc_(bits_per_char), words_(2, 0) {}

    void append(Code c);
    std::uint64_t size() const { return size_; }
    unsigned bits_per_char() const { return bpc_; }

    /// Character at 1-based position i.
    Code at(std::uint64_t i) const {
        return static_cast<Code>(bits((i - 1) * bpc_, bpc_));
    }
    /// The r characters starting at 1-based position i, packed big-endian.
    MetaChar window(std::uint64_t i, unsigned r) const { return MetaChar{bits((i - 1) * bpc_, r * bpc_)}; }
    /// Meta-block j (1-based) of an r-blocked view.
    MetaChar block(std::uint64_t j, unsigned r) const { return window((j - 1) * r + 1, r); }

    std::size_t memory_bytes() const { return words_.capacity() * sizeof(std::uint64_t); }

private:
    std::uint64_t bits(std::uint64_t offset, unsigned width) const {
        const std::uint64_t w = offset >> 6;
        const unsigned sh = static_cast<unsigned>(offset & 63);
        std::uint64_t v = words_[w] << sh;
        if (sh != 0) v |= words_[w + 1] >> (64 - sh);
        return width == 0 ? 0 : v >> (64 - width);
    }

    unsigned bpc_;
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace lzdawg
