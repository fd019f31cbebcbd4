#include "lzdawg/packed_text.hpp"

namespace lzdawg {

void PackedText::append(Code c) {
    const std::uint64_t offset = size_ * bpc_;
    const std::uint64_t w = offset >> 6;
    if (w + 2 > words_.size()) words_.resize(words_.size() * 2, 0);
    const unsigned sh = static_cast<unsigned>(offset & 63);
    const std::uint64_t v = c;
    // Characters are laid out MSB-first; a code may straddle two words.
    if (sh + bpc_ <= 64) {
        words_[w] |= v << (64 - sh - bpc_);
    } else {
        const unsigned spill = sh + bpc_ - 64;
        words_[w] |= v >> spill;
        words_[w + 1] |= v << (64 - spill);
    }
    ++size_;
}

}  // namespace lzdawg
