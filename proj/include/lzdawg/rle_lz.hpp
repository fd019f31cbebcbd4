#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lzdawg/factor.hpp"
#include "lzdawg/oracle.hpp"

namespace lzdawg {

class Dawg;

struct RleStats {
    std::uint64_t n = 0;  ///< characters consumed
    std::uint64_t m = 0;  ///< complete runs
    std::uint64_t z = 0;
    std::uint64_t dawg_states = 0;
    std::uint64_t dawg_edges = 0;
    std::uint64_t dom_sets = 0;
    std::uint64_t dom_points = 0;
};

/// Online s-factorizer driven by the run-length encoding of the input.
///
/// The DAWG is built over runs, one symbol per (character, exponent) pair,
/// so work per factor depends on the number of runs it spans rather than
/// its length in characters.
class RleFactorizer {
public:
    RleFactorizer();
    ~RleFactorizer();
    RleFactorizer(RleFactorizer&&) noexcept;
    RleFactorizer& operator=(RleFactorizer&&) noexcept;

    /// Appends a whole run; its character must differ from the previous run's.
    std::vector<Factor> push_run(Code ch, std::uint64_t exp);
    /// Appends raw characters; the trailing run stays open until a different
    /// character or finish() arrives.
    std::vector<Factor> push(std::span<const Code> chars);
    std::vector<Factor> finish();

    RleStats stats() const;
    const Dawg& dawg() const;

    static std::vector<Factor> factorize(std::span<const Code> text);
    static std::vector<Factor> factorize_runs(std::span<const Run> runs);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace lzdawg
