#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "lzdawg/alphabet.hpp"
#include "lzdawg/factor.hpp"

namespace lzdawg {

/// Reference s-factorization by direct comparison. Each factor takes the
/// leftmost longest previous occurrence, overlaps allowed.
std::vector<Factor> naive_factorize(std::span<const Code> text);

struct Run {
    Code ch = 0;
    std::uint64_t exp = 0;
    friend bool operator==(Run, Run) = default;
};

std::vector<Run> rle_encode(std::span<const Code> text);
std::vector<Code> rle_decode(std::span<const Run> runs);

/// End positions (1-based) of every occurrence of pattern in text.
std::set<std::uint64_t> brute_endpos(std::span<const std::uint64_t> text, std::span<const std::uint64_t> pattern);

/// Rebuilds the text a factor sequence describes; copies may overlap.
std::vector<Code> apply_factors(const std::vector<Factor>& fs);

}  // namespace lzdawg
