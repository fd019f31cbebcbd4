#include "lzdawg/dawg.hpp"

#include <cassert>
#include <sstream>

namespace lzdawg {

Dawg::Dawg() { new_state(0, 0); }

StateId Dawg::new_state(std::uint32_t len, std::uint32_t pos) {
    State s;
    s.len = len;
    s.pos = pos;
    states_.push_back(std::move(s));
    return static_cast<StateId>(states_.size() - 1);
}

void Dawg::set_link(StateId s, StateId target) {
    State& st = states_[s];
    st.link = target;
    // longest(target) ends at pos(s) inside longest(s); the label is the symbol before it.
    st.link_label = symbols_[st.pos - states_[target].len - 1];
    reverse_links_[LinkKey{target, st.link_label}] = s;
}

std::vector<DawgEvent> Dawg::extend(Symbol b) {
    std::vector<DawgEvent> events;
    extend(b, events);
    return events;
}

void Dawg::extend(Symbol b, std::vector<DawgEvent>& events) {
    symbols_.push_back(b);
    const auto n = static_cast<std::uint32_t>(symbols_.size());
    const StateId old_sink = sink_;
    const StateId fresh = new_state(states_[old_sink].len + 1, n);
    states_[old_sink].edges.emplace(b, fresh);
    ++edge_count_;
    events.push_back({DawgEvent::Kind::NewSink, old_sink, fresh, b, 0});

    StateId cur = old_sink;
    StateId suffix_state = kNoState;
    while (cur != source() && suffix_state == kNoState) {
        cur = states_[cur].link;
        auto it = states_[cur].edges.find(b);
        if (it == states_[cur].edges.end()) {
            states_[cur].edges.emplace(b, fresh);
            ++edge_count_;
            const Symbol c = symbols_[n - states_[cur].len - 2];
            events.push_back({DawgEvent::Kind::SecondaryEdgeAdded, cur, fresh, b, c});
        } else if (is_primary(cur, it->second)) {
            suffix_state = it->second;
        } else {
            suffix_state = split(cur, b, it->second, events);
        }
    }
    if (suffix_state == kNoState) suffix_state = source();
    sink_ = fresh;
    set_link(fresh, suffix_state);
    if (suffix_state != source()) {
        // cur is the primary parent of suffix_state at this point
        events.push_back({DawgEvent::Kind::SuffixLinkSet, cur, suffix_state, b, states_[fresh].link_label});
    }
}

StateId Dawg::split(StateId parent, Symbol a, StateId child, std::vector<DawgEvent>& events) {
    const StateId clone = new_state(states_[parent].len + 1, states_[child].pos);
    states_[parent].edges[a] = clone;
    for (const auto& [c, dest] : states_[child].edges) {
        states_[clone].edges.emplace(c, dest);
        ++edge_count_;
        const Symbol ctx = symbols_[states_[dest].pos - states_[clone].len - 2];
        events.push_back({DawgEvent::Kind::SplitCopiedEdge, clone, dest, c, ctx});
    }
    set_link(clone, states_[child].link);
    set_link(child, clone);

    StateId cur = parent;
    while (cur != source()) {
        cur = states_[cur].link;
        auto it = states_[cur].edges.find(a);
        if (it == states_[cur].edges.end() || it->second != child) break;
        it->second = clone;
    }
    return clone;
}

std::optional<StateId> Dawg::transition(StateId s, Symbol a) const {
    const auto& e = states_[s].edges;
    auto it = e.find(a);
    if (it == e.end()) return std::nullopt;
    return it->second;
}

std::pair<std::optional<Symbol>, std::optional<Symbol>> Dawg::edge_neighbors(StateId s, Symbol a) const {
    const auto& e = states_[s].edges;
    std::optional<Symbol> pred, succ;
    auto it = e.lower_bound(a);
    if (it != e.begin()) pred = std::prev(it)->first;
    if (it != e.end() && it->first == a) ++it;
    if (it != e.end()) succ = it->first;
    return {pred, succ};
}

std::optional<StateId> Dawg::suffix_link_reverse_lookup(StateId s, Symbol a) const {
    auto it = reverse_links_.find(LinkKey{s, a});
    if (it == reverse_links_.end()) return std::nullopt;
    return it->second;
}

std::string Dawg::to_dot() const {
    std::ostringstream os;
    os << "digraph dawg {\n  rankdir=LR;\n";
    for (StateId s = 0; s < states_.size(); ++s) {
        os << "  s" << s << " [label=\"" << states_[s].pos << "\"";
        if (s == sink_) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (StateId s = 0; s < states_.size(); ++s) {
        for (const auto& [sym, t] : states_[s].edges) {
            os << "  s" << s << " -> s" << t << " [label=\"" << sym << "\"";
            if (is_primary(s, t)) os << ", style=bold";
            os << "];\n";
        }
        if (states_[s].link != kNoState)
            os << "  s" << s << " -> s" << states_[s].link << " [style=dashed, label=\"" << states_[s].link_label
               << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace lzdawg
