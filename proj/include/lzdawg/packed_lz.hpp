#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lzdawg/alphabet.hpp"
#include "lzdawg/factor.hpp"

namespace lzdawg {

class Dawg;
class BlockTree;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PackedConfig {
    unsigned sigma = 256;
    /// Fixed characters per meta-character; when unset r follows the length bound.
    std::optional<unsigned> block_chars;
    /// Initial string-length bound; doubled as the input grows.
    std::uint64_t initial_capacity = std::uint64_t{1} << 16;
    /// Upper limit on r * bits_per_char, which sizes the meta-character bit arrays.
    unsigned max_meta_bits = 32;
    /// Bytes; 0 means "read LZDAWG_MEMORY_BUDGET, unlimited if unset".
    std::uint64_t memory_budget = 0;
};

struct PackedStats {
    std::uint64_t n = 0;  ///< characters consumed
    std::uint64_t z = 0;  ///< factors emitted
    unsigned r = 0;
    std::uint64_t dawg_states = 0;
    std::uint64_t dawg_edges = 0;
    std::uint64_t dawg_symbols = 0;
    std::uint64_t points_total = 0;
    std::uint64_t rebuilds = 0;
    std::uint64_t short_factors = 0;
    std::uint64_t long_factors = 0;
    std::uint64_t tail_factors = 0;
    std::uint64_t in_block_lookups = 0;
    std::uint64_t future_overflows = 0;
};

/// Online s-factorizer over packed text.
///
/// Characters arrive through push(); a factor is returned as soon as its
/// maximal extension is decided, and never changes afterwards. finish()
/// flushes the remaining factors. Factors shorter than r are found with the
/// meta-character occurrence bit array; longer ones by walking a DAWG of the
/// meta-block sequence once per block offset, with per-state point sets
/// constraining the block that precedes each walk.
class PackedFactorizer {
public:
    explicit PackedFactorizer(PackedConfig cfg = {});
    ~PackedFactorizer();
    PackedFactorizer(PackedFactorizer&&) noexcept;
    PackedFactorizer& operator=(PackedFactorizer&&) noexcept;

    std::vector<Factor> push(std::span<const Code> chars);
    std::vector<Factor> finish();

    PackedStats stats() const;
    const AlphabetCfg& alphabet() const;
    const Dawg& dawg() const;
    const BlockTree& block_tree() const;

    /// Convenience: factorize a whole sequence.
    static std::vector<Factor> factorize(std::span<const Code> text, PackedConfig cfg = {});

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Longest prefix of text[l..] (0-based l) with an occurrence starting before
/// l; returns {length, 1-based src}. Linear-time Z-function scan used for the
/// final characters of a stream and as a reference in tests.
std::pair<std::uint64_t, std::uint64_t> longest_previous_factor(std::span<const Code> text, std::uint64_t l);

}  // namespace lzdawg
