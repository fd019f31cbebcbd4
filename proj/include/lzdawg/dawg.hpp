#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/btree_map.h>
#include <absl/container/flat_hash_map.h>

namespace lzdawg {

using Symbol = std::uint64_t;
using StateId = std::uint32_t;
inline constexpr StateId kNoState = 0xffffffffu;

/// Structural change reported by Dawg::extend, in mutation order.
struct DawgEvent {
    enum class Kind {
        NewSink,             ///< owner -> target is the new primary sink edge
        SecondaryEdgeAdded,  ///< owner -> target by `symbol`; `context` precedes longest(owner)·symbol
        SuffixLinkSet,       ///< new sink links to `target` with label `context`; owner is target's primary parent
        SplitCopiedEdge,     ///< clone `owner` received secondary edge `symbol` -> target; `context` as above
    };
    Kind kind;
    StateId owner = kNoState;
    StateId target = kNoState;
    Symbol symbol = 0;
    Symbol context = 0;
};

/// Online DAWG (suffix automaton) over an integer alphabet.
///
/// Symbol positions are 1-based. Every state remembers the length of its
/// longest member and `pos`, the smallest end position of its members. Suffix
/// links carry the symbol that precedes the target's longest member inside the
/// source's longest member, and can be followed backwards.
class Dawg {
public:
    struct State {
        std::uint32_t len = 0;
        std::uint32_t pos = 0;
        StateId link = kNoState;
        Symbol link_label = 0;
        absl::btree_map<Symbol, StateId> edges;
    };

    Dawg();

    /// Appends b; structural events are appended to `events`.
    void extend(Symbol b, std::vector<DawgEvent>& events);
    std::vector<DawgEvent> extend(Symbol b);

    StateId source() const { return 0; }
    StateId sink() const { return sink_; }
    std::uint32_t symbol_count() const { return static_cast<std::uint32_t>(symbols_.size()); }
    /// Consumed symbol at 1-based index i.
    Symbol symbol_at(std::uint32_t i) const { return symbols_[i - 1]; }

    const State& state(StateId s) const { return states_[s]; }
    std::size_t state_count() const { return states_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::optional<StateId> transition(StateId s, Symbol a) const;
    bool is_primary(StateId from, StateId to) const { return states_[from].len + 1 == states_[to].len; }

    /// Largest out-edge symbol < a and smallest > a.
    std::pair<std::optional<Symbol>, std::optional<Symbol>> edge_neighbors(StateId s, Symbol a) const;

    /// The state t whose suffix link is (s, a), if any.
    std::optional<StateId> suffix_link_reverse_lookup(StateId s, Symbol a) const;

    /// Graphviz rendering; edges solid (bold when primary), suffix links dashed.
    std::string to_dot() const;

private:
    struct LinkKey {
        StateId target;
        Symbol label;
        bool operator==(const LinkKey&) const = default;
    };
    struct LinkKeyHash {
        std::size_t operator()(const LinkKey& k) const noexcept {
            return std::hash<Symbol>{}(k.label * 0x9e3779b97f4a7c15ull ^ k.target);
        }
    };

    StateId new_state(std::uint32_t len, std::uint32_t pos);
    void set_link(StateId s, StateId target);
    StateId split(StateId parent, Symbol a, StateId child, std::vector<DawgEvent>& events);

    std::vector<State> states_;
    std::vector<Symbol> symbols_;
    absl::flat_hash_map<LinkKey, StateId, LinkKeyHash> reverse_links_;
    StateId sink_ = 0;
    std::size_t edge_count_ = 0;
};

}  // namespace lzdawg
