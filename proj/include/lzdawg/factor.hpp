#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "lzdawg/alphabet.hpp"

namespace lzdawg {

/// One s-factor. Positions are 1-based character positions.
struct Factor {
    enum class Kind : std::uint8_t { Literal, Copy };

    Kind kind = Kind::Literal;
    std::uint64_t start = 0;
    Code ch = 0;           ///< Literal only
    std::uint64_t src = 0; ///< Copy only; may overlap the factor itself
    std::uint64_t len = 1;

    static Factor literal(std::uint64_t start, Code c) { return {Kind::Literal, start, c, 0, 1}; }
    static Factor copy(std::uint64_t start, std::uint64_t src, std::uint64_t len) {
        return {Kind::Copy, start, 0, src, len};
    }

    bool is_literal() const { return kind == Kind::Literal; }
    std::uint64_t length() const { return is_literal() ? 1 : len; }

    friend bool operator==(const Factor&, const Factor&) = default;
};

std::ostream& operator<<(std::ostream& os, const Factor& f);

/// Lengths of a factor sequence, the quantity every backend must agree on.
std::vector<std::uint64_t> factor_lengths(const std::vector<Factor>& fs);

/// Checks the tiling and Copy invariants of `fs` against `text`; returns the
/// index of the first offending factor, fs.size() + 1 when the factors stop
/// short of the text, or fs.size() when all are valid.
std::size_t first_invalid_factor(const std::vector<Factor>& fs, const std::vector<Code>& text);

}  // namespace lzdawg
