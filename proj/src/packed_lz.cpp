#include "lzdawg/packed_lz.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <string>

#include "lzdawg/block_tree.hpp"
#include "lzdawg/dawg.hpp"
#include "lzdawg/dyn_bitvec.hpp"
#include "lzdawg/packed_text.hpp"
#include "lzdawg/point_index.hpp"
#include "lzdawg/resumable.hpp"

#include <absl/container/flat_hash_map.h>

namespace lzdawg {

using detail::InputGate;
using detail::Task;
using detail::Unit;

namespace {

std::uint64_t budget_from_env() {
    if (const char* v = std::getenv("LZDAWG_MEMORY_BUDGET")) {
        char* end = nullptr;
        const unsigned long long b = std::strtoull(v, &end, 10);
        if (end != v) return b;
    }
    return 0;
}

constexpr unsigned kMaxMetaBits = std::bit_width(DynBitArray::kMaxLength) - 1;

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::pair<std::uint64_t, std::uint64_t> longest_previous_factor(std::span<const Code> text, std::uint64_t l) {
    const std::size_t n = text.size();
    if (l >= n) return {0, 0};
    // Z-function over  text[l..) # text[0..n)
    const std::size_t plen = n - l;
    std::vector<int> t;
    t.reserve(plen + 1 + n);
    for (std::size_t i = l; i < n; ++i) t.push_back(text[i]);
    t.push_back(-1);
    for (std::size_t i = 0; i < n; ++i) t.push_back(text[i]);
    std::vector<std::size_t> z(t.size(), 0);
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (i < hi) z[i] = std::min(hi - i, z[i - lo]);
        while (i + z[i] < t.size() && t[z[i]] == t[i + z[i]]) ++z[i];
        if (i + z[i] > hi) {
            lo = i;
            hi = i + z[i];
        }
    }
    std::uint64_t best = 0, src = 0;
    for (std::size_t p = 0; p < l; ++p) {
        const std::uint64_t len = std::min<std::size_t>(z[plen + 1 + p], plen);
        if (len > best) {
            best = len;
            src = p + 1;
        }
    }
    return {best, src};
}

struct PackedFactorizer::Impl {
    struct Outcome {
        std::uint64_t len = 0;
        std::uint64_t src = 0;  // 0 with len 1 means literal
        bool tail = false;
    };
    struct Step {
        StateId next;
        std::int64_t start;
    };

    PackedConfig cfg;
    unsigned bpc;
    std::uint64_t budget;
    AlphabetCfg alpha;
    PackedText text;
    std::uint64_t bound;
    bool finished = false;

    // Rebuilt whenever r changes.
    std::unique_ptr<BlockTree> tree;
    Dawg dawg;
    absl::flat_hash_map<StateId, PointSet> points;
    std::uint64_t points_total = 0;
    std::uint64_t windows_done = 0;
    std::vector<DawgEvent> event_buf;

    std::uint64_t l = 0;
    std::vector<Factor> out;
    PackedStats counters;

    std::coroutine_handle<> parked;
    std::uint64_t parked_need = 0;
    Task<Unit> root;
    bool started = false;

    explicit Impl(PackedConfig c)
        : cfg(c), bpc(AlphabetCfg::bits_for(c.sigma)), budget(c.memory_budget ? c.memory_budget : budget_from_env()),
          text(bpc), bound(std::max<std::uint64_t>(c.initial_capacity, 2)) {
        if (cfg.block_chars && (*cfg.block_chars == 0 || *cfg.block_chars * bpc > kMaxMetaBits))
            throw ConfigError("block of " + std::to_string(cfg.block_chars.value_or(0)) + " characters is out of range");
        alpha = AlphabetCfg::make(cfg.sigma, choose_r(bound));
        reset_structures();
        root = run();
    }

    // --- input gating -------------------------------------------------------

    bool input_available(std::uint64_t q) const { return q <= text.size(); }
    bool input_ready(std::uint64_t q) const { return finished || input_available(q); }
    void park(std::coroutine_handle<> h, std::uint64_t needed) {
        parked = h;
        parked_need = needed;
    }
    InputGate<Impl> gate(std::uint64_t q) { return {this, q}; }

    void pump() {
        if (!started) {
            started = true;
            root.start();
        } else if (parked && !root.done() && input_ready(parked_need)) {
            auto h = std::exchange(parked, {});
            h.resume();
        }
        root.rethrow_if_failed();
    }

    // --- structure management ----------------------------------------------

    unsigned choose_r(std::uint64_t len_bound) const {
        if (cfg.block_chars) return *cfg.block_chars;
        unsigned cap_bits = std::min(cfg.max_meta_bits, kMaxMetaBits);
        if (budget) {
            // two bit arrays over the meta-character space plus their page tables
            while (cap_bits > bpc && (std::uint64_t{1} << cap_bits) / 4 > budget) --cap_bits;
        }
        const unsigned lg = static_cast<unsigned>(std::bit_width(len_bound) - 1);
        unsigned r = std::max(1u, lg / bpc);
        while (r > 1 && r * bpc > cap_bits) --r;
        return r;
    }

    void reset_structures() {
        tree = std::make_unique<BlockTree>(alpha);
        dawg = Dawg();
        points.clear();
        points_total = 0;
        windows_done = 0;
    }

    void maybe_rebuild() {
        if (l < bound) return;
        while (bound <= l) bound *= 2;
        if (budget && text.memory_bytes() > budget)
            throw ConfigError("input exceeds memory budget of " + std::to_string(budget) + " bytes");
        const unsigned r = choose_r(bound);
        if (r == alpha.r) return;
        alpha = AlphabetCfg::make(cfg.sigma, r);
        reset_structures();
        ++counters.rebuilds;
    }

    void advance_windows() {
        const unsigned r = alpha.r;
        for (std::uint64_t p = windows_done + 1; p <= l; ++p) {
            std::optional<MetaChar> prev;
            if (p > 1) prev = text.window(p - 1, r);
            tree->update(p + r - 1, text.window(p, r), prev);
        }
        windows_done = std::max(windows_done, l);
    }

    void ensure_dawg(std::uint64_t blocks) {
        while (dawg.symbol_count() < blocks) {
            event_buf.clear();
            dawg.extend(text.block(dawg.symbol_count() + 1, alpha.r).value, event_buf);
            for (const auto& ev : event_buf) {
                if (ev.kind == DawgEvent::Kind::NewSink) continue;
                const Point p{reverse_meta(MetaChar{ev.context}, alpha).value, ev.symbol};
                if (points.try_emplace(ev.owner, bpc, alpha.meta_bits()).first->second.insert(p)) ++points_total;
            }
        }
    }

    /// Ensures text and DAWG cover the block holding character position q.
    Task<bool> cover(std::uint64_t q) {
        const std::uint64_t blk = ceil_div(q, alpha.r);
        if (!co_await gate(blk * alpha.r)) co_return false;
        ensure_dawg(blk);
        co_return true;
    }

    /// Moves a traversal handle to the class that now holds its d-symbol string.
    StateId resolve(StateId h, std::uint64_t d) const {
        while (h != dawg.source() && dawg.state(dawg.state(h).link).len >= d) h = dawg.state(h).link;
        return h;
    }

    bool valid_start(std::int64_t s) const { return s >= 1 && static_cast<std::uint64_t>(s) <= l; }

    /// Start of an occurrence with offset m whose block part (`blocks` blocks) ends at block e.
    std::int64_t occ_start(std::uint64_t e, std::uint64_t blocks, unsigned m) const {
        return (static_cast<std::int64_t>(e) - static_cast<std::int64_t>(blocks)) * alpha.r + 1 - m;
    }

    /// End block of the first occurrence of A·longest(h)·X, for a point (rev A, X) of h.
    std::uint64_t point_occurrence_end(StateId h, Symbol x_sym, MetaChar a) const {
        const StateId t = *dawg.transition(h, x_sym);
        if (dawg.is_primary(h, t)) {
            const auto s = dawg.suffix_link_reverse_lookup(t, a.value);
            assert(s.has_value());
            return dawg.state(*s).pos;
        }
        return dawg.state(t).pos;
    }

    /// First point of `ps` in the rectangle whose occurrence starts at or before l.
    std::optional<std::int64_t> valid_point(const PointSet& ps, BitInterval xr, BitInterval yr,
                                            const auto& start_of) {
        const auto cands = ps.find_up_to(xr, yr, 3);
        for (Point p : cands) {
            const std::int64_t s = start_of(p);
            if (valid_start(s)) return s;
        }
        if (cands.size() < 3) return std::nullopt;
        ++counters.future_overflows;
        std::int64_t found = 0;
        auto hit = ps.find_if(xr, yr, [&](Point p) {
            found = start_of(p);
            return valid_start(found);
        });
        if (hit) return found;
        return std::nullopt;
    }

    const PointSet* points_of(StateId s) const {
        auto it = points.find(s);
        return it == points.end() ? nullptr : &it->second;
    }

    // --- factor computation -------------------------------------------------

    Task<Unit> run() {
        while (co_await gate(l + 1)) {
            maybe_rebuild();
            Outcome o = co_await compute();
            if (o.tail) {
                std::vector<Code> all(text.size());
                for (std::uint64_t i = 0; i < text.size(); ++i) all[i] = text.at(i + 1);
                auto [len, src] = longest_previous_factor(all, l);
                o.len = std::max<std::uint64_t>(len, 1);
                o.src = len == 0 ? 0 : src;
                ++counters.tail_factors;
            }
            if (o.src == 0) {
                out.push_back(Factor::literal(l + 1, text.at(l + 1)));
            } else {
                assert(o.src <= l);
                out.push_back(Factor::copy(l + 1, o.src, o.len));
            }
            ++counters.z;
            l += o.len;
        }
        co_return Unit{};
    }

    Task<Outcome> compute() {
        const unsigned r = alpha.r;
        if (!co_await gate(l + r)) co_return Outcome{0, 0, true};
        advance_windows();
        const MetaChar head = text.window(l + 1, r);
        if (tree->nodes().get(head.value + 1)) {
            ++counters.long_factors;
            co_return co_await long_factor();
        }
        ++counters.short_factors;
        unsigned len = 0;
        for (unsigned m = 1; m < r; ++m) {
            const unsigned free_bits = (r - m) * bpc;
            const std::uint64_t lo = (head.value >> free_bits) << free_bits;
            const std::uint64_t hi = lo | ((std::uint64_t{1} << free_bits) - 1);
            if (tree->nodes().pc(lo + 1, hi + 1) == 0) break;
            len = m;
        }
        if (len == 0) co_return Outcome{1, 0, false};
        co_return co_await short_occurrence(len);
    }

    Task<Outcome> short_occurrence(unsigned len) {
        const unsigned r = alpha.r;
        if (!co_await cover(l + len - 1)) co_return Outcome{0, 0, true};
        std::vector<Code> f(len);
        for (unsigned i = 0; i < len; ++i) f[i] = text.at(l + 1 + i);

        // Occurrences crossing a block border.
        if (const PointSet* ps = points_of(dawg.source())) {
            for (unsigned m = 1; m < len; ++m) {
                const BitInterval xr = suffix_interval(std::span<const Code>(f.data(), m), alpha);
                const BitInterval yr = prefix_interval(std::span<const Code>(f.data() + m, len - m), alpha);
                auto start_of = [&](Point p) -> std::int64_t {
                    const MetaChar a = reverse_meta(MetaChar{p.x}, alpha);
                    const StateId sa = *dawg.transition(dawg.source(), a.value);
                    const StateId sax = *dawg.transition(sa, p.y);
                    return static_cast<std::int64_t>(dawg.state(sax).pos - 1) * r - m + 1;
                };
                if (auto s = valid_point(*ps, xr, yr, start_of)) co_return Outcome{len, static_cast<std::uint64_t>(*s), false};
            }
        }

        // Only in-block occurrences remain.
        ++counters.in_block_lookups;
        if (!co_await cover(l + r - 1)) co_return Outcome{0, 0, true};
        const BitInterval tr = prefix_interval(f, alpha);
        const auto& nodes = tree->nodes();
        const MetaChar ai{nodes.select(nodes.rank(tr.hi + 1)) - 1};
        assert(tr.contains(ai.value));
        const auto loc = tree->locate(ai);
        const auto st = dawg.transition(dawg.source(), loc.block.value);
        if (st && loc.shift + len <= r) {
            const std::uint64_t src = std::uint64_t{dawg.state(*st).pos - 1} * r + 1 + loc.shift;
            if (src <= l) co_return Outcome{len, src, false};
        }
        co_return Outcome{0, 0, true};
    }

    /// One DAWG step of the offset-m walk from h (d blocks matched) by X.
    std::optional<Step> try_step(StateId h, std::uint64_t d, unsigned m, MetaChar x, BitInterval xr) {
        const bool longest = dawg.state(h).len == d;
        if (m == 0 || !longest) {
            const auto t = dawg.transition(h, x.value);
            if (!t) return std::nullopt;
            const std::uint64_t e = dawg.state(*t).pos;
            const std::int64_t s = occ_start(e, d + 1, m);
            if (!valid_start(s)) return std::nullopt;
            if (m > 0 && !xr.contains(reverse_meta(MetaChar{dawg.symbol_at(static_cast<std::uint32_t>(e - d - 1))}, alpha).value))
                return std::nullopt;
            return Step{*t, s};
        }
        const PointSet* ps = points_of(h);
        if (!ps) return std::nullopt;
        auto start_of = [&](Point p) {
            return occ_start(point_occurrence_end(h, p.y, reverse_meta(MetaChar{p.x}, alpha)), d + 1, m);
        };
        auto s = valid_point(*ps, xr, BitInterval{x.value, x.value}, start_of);
        if (!s) return std::nullopt;
        return Step{*dawg.transition(h, x.value), *s};
    }

    /// Some valid occurrence extending the walk by a block in yr, if any.
    std::optional<std::int64_t> try_partial(StateId h, std::uint64_t d, unsigned m, BitInterval yr, BitInterval xr) {
        const bool longest = dawg.state(h).len == d;
        if (m == 0 || !longest) {
            const auto& edges = dawg.state(h).edges;
            for (auto it = edges.lower_bound(yr.lo); it != edges.end() && it->first <= yr.hi; ++it) {
                const std::uint64_t e = dawg.state(it->second).pos;
                const std::int64_t s = occ_start(e, d + 1, m);
                if (!valid_start(s)) continue;
                if (m > 0 && !xr.contains(reverse_meta(MetaChar{dawg.symbol_at(static_cast<std::uint32_t>(e - d - 1))}, alpha).value))
                    continue;
                return s;
            }
            return std::nullopt;
        }
        const PointSet* ps = points_of(h);
        if (!ps) return std::nullopt;
        auto start_of = [&](Point p) {
            return occ_start(point_occurrence_end(h, p.y, reverse_meta(MetaChar{p.x}, alpha)), d + 1, m);
        };
        return valid_point(*ps, xr, yr, start_of);
    }

    Task<Outcome> long_factor() {
        const unsigned r = alpha.r;
        std::uint64_t best = 0;
        std::uint64_t best_src = 0;
        for (unsigned m = 0; m < r; ++m) {
            BitInterval xr{0, alpha.capacity() - 1};
            if (m > 0) {
                std::vector<Code> head(m);
                for (unsigned i = 0; i < m; ++i) head[i] = text.at(l + 1 + i);
                xr = suffix_interval(head, alpha);
            }
            StateId h = dawg.source();
            std::uint64_t d = 0;
            for (;;) {
                const std::uint64_t reach = m + (d + 1) * r;
                if (!co_await gate(l + reach)) co_return Outcome{0, 0, true};
                if (!co_await cover(l + reach - 1)) co_return Outcome{0, 0, true};
                h = resolve(h, d);
                const MetaChar x = text.window(l + m + d * r + 1, r);
                const auto step = try_step(h, d, m, x, xr);
                if (!step) break;
                h = step->next;
                ++d;
                if (reach > best) {
                    best = reach;
                    best_src = static_cast<std::uint64_t>(step->start);
                }
            }
            // Partial block after the walk; only worth it when it can beat best.
            const std::uint64_t walked = m + d * r;
            if (walked + r - 1 <= best) continue;
            const std::uint64_t first_j = best >= walked ? best - walked + 1 : 1;
            for (std::uint64_t j = first_j; j < r; ++j) {
                const std::uint64_t reach = walked + j;
                if (!co_await gate(l + reach)) co_return Outcome{0, 0, true};
                if (!co_await cover(l + reach - 1)) co_return Outcome{0, 0, true};
                h = resolve(h, d);
                const MetaChar nxt = text.window(l + walked + 1, r);
                const unsigned free_bits = static_cast<unsigned>(r - j) * bpc;
                const std::uint64_t lo = (nxt.value >> free_bits) << free_bits;
                const BitInterval yr{lo, lo | ((std::uint64_t{1} << free_bits) - 1)};
                const auto s = try_partial(h, d, m, yr, xr);
                if (!s) break;
                best = reach;
                best_src = static_cast<std::uint64_t>(*s);
            }
        }
        assert(best >= r);
        co_return Outcome{best, best_src, false};
    }
};

PackedFactorizer::PackedFactorizer(PackedConfig cfg) : impl_(std::make_unique<Impl>(cfg)) {}
PackedFactorizer::~PackedFactorizer() = default;
PackedFactorizer::PackedFactorizer(PackedFactorizer&&) noexcept = default;
PackedFactorizer& PackedFactorizer::operator=(PackedFactorizer&&) noexcept = default;

std::vector<Factor> PackedFactorizer::push(std::span<const Code> chars) {
    for (Code c : chars) {
        if (c >= impl_->cfg.sigma)
            throw AlphabetError("character code " + std::to_string(c) + " outside alphabet of size " +
                                std::to_string(impl_->cfg.sigma));
    }
    if (impl_->finished) throw std::logic_error("push after finish");
    for (Code c : chars) impl_->text.append(c);
    if (!chars.empty()) impl_->pump();
    return std::exchange(impl_->out, {});
}

std::vector<Factor> PackedFactorizer::finish() {
    if (!impl_->finished) {
        impl_->finished = true;
        impl_->pump();
    }
    return std::exchange(impl_->out, {});
}

PackedStats PackedFactorizer::stats() const {
    PackedStats s = impl_->counters;
    s.n = impl_->text.size();
    s.r = impl_->alpha.r;
    s.dawg_states = impl_->dawg.state_count();
    s.dawg_edges = impl_->dawg.edge_count();
    s.dawg_symbols = impl_->dawg.symbol_count();
    s.points_total = impl_->points_total;
    return s;
}

const AlphabetCfg& PackedFactorizer::alphabet() const { return impl_->alpha; }
const Dawg& PackedFactorizer::dawg() const { return impl_->dawg; }
const BlockTree& PackedFactorizer::block_tree() const { return *impl_->tree; }

std::vector<Factor> PackedFactorizer::factorize(std::span<const Code> text, PackedConfig cfg) {
    PackedFactorizer f(cfg);
    auto out = f.push(text);
    auto rest = f.finish();
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace lzdawg
