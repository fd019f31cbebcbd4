#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace lzdawg {

using Code = std::uint8_t;

class AlphabetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// r characters packed big-endian into one word; the first character sits in
/// the most significant bits, so integer order equals lexicographic order.
struct MetaChar {
    std::uint64_t value = 0;
    friend constexpr auto operator<=>(MetaChar, MetaChar) = default;
};

/// Closed interval of meta-character values.
struct BitInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    constexpr bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
    friend constexpr bool operator==(BitInterval, BitInterval) = default;
};

struct AlphabetCfg {
    unsigned sigma = 2;
    unsigned bits_per_char = 1;
    unsigned r = 1;

    /// Throws AlphabetError when sigma is outside [2, 256] or the block does
    /// not fit into 63 bits.
    static AlphabetCfg make(unsigned sigma, unsigned r);

    static unsigned bits_for(unsigned sigma);

    unsigned meta_bits() const { return r * bits_per_char; }
    std::uint64_t capacity() const { return std::uint64_t{1} << meta_bits(); }
    std::uint64_t char_mask() const { return (std::uint64_t{1} << bits_per_char) - 1; }
};

MetaChar pack(std::span<const Code> chars, const AlphabetCfg& cfg);
void unpack(MetaChar a, const AlphabetCfg& cfg, std::span<Code> out);

/// Character at 0-based index i of a meta-character.
inline Code char_at(MetaChar a, unsigned i, const AlphabetCfg& cfg) {
    unsigned shift = (cfg.r - 1 - i) * cfg.bits_per_char;
    return static_cast<Code>((a.value >> shift) & cfg.char_mask());
}

MetaChar reverse_meta(MetaChar a, const AlphabetCfg& cfg);

/// Meta-characters having t as a character prefix (|t| <= r).
BitInterval prefix_interval(std::span<const Code> t, const AlphabetCfg& cfg);

/// Interval containing reverse_meta(m) for every m having t as a character
/// suffix (|t| < r).
BitInterval suffix_interval(std::span<const Code> t, const AlphabetCfg& cfg);

/// Number of leading characters two meta-characters share.
unsigned common_prefix_chars(MetaChar a, MetaChar b, const AlphabetCfg& cfg);

}  // namespace lzdawg
