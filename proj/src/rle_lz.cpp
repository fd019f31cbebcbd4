#include "lzdawg/rle_lz.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

#include "lzdawg/dawg.hpp"
#include "lzdawg/dom_set.hpp"
#include "lzdawg/resumable.hpp"

#include <absl/container/flat_hash_map.h>

namespace lzdawg {

using detail::InputGate;
using detail::Task;
using detail::Unit;

namespace {

constexpr unsigned kExpBits = 40;
constexpr std::uint64_t kExpMask = (std::uint64_t{1} << kExpBits) - 1;

Symbol run_symbol(Code ch, std::uint64_t exp) { return (Symbol{ch} << kExpBits) | exp; }
Code symbol_char(Symbol s) { return static_cast<Code>(s >> kExpBits); }
std::uint64_t symbol_exp(Symbol s) { return s & kExpMask; }

struct DomKey {
    StateId state;
    Code a;
    Code b;
    bool operator==(const DomKey&) const = default;
};

struct DomKeyHash {
    std::size_t operator()(const DomKey& k) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t{k.state} << 16) | (std::uint64_t{k.a} << 8) | k.b);
    }
};

}  // namespace

struct RleFactorizer::Impl {
    std::vector<Run> runs;                 // complete runs
    std::vector<std::uint64_t> run_end{0};  // run_end[i] = last position of run i
    Run pending{};                          // open trailing run (exp 0 = none)
    bool finished = false;

    Dawg dawg;
    absl::flat_hash_map<DomKey, DomSet, DomKeyHash> dom;
    std::vector<DawgEvent> event_buf;

    std::uint64_t l = 0;
    std::uint64_t k = 1;  // run holding position l + 1
    std::vector<Factor> out;
    std::uint64_t z = 0;

    std::coroutine_handle<> parked;
    std::uint64_t parked_need = 0;
    Task<Unit> root;
    bool started = false;

    Impl() { root = run(); }

    bool input_available(std::uint64_t q) const { return q <= runs.size(); }
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

    void close_run(Run r) {
        if (r.exp == 0) throw std::invalid_argument("run exponent must be positive");
        if (r.exp > kExpMask) throw std::invalid_argument("run exponent too large");
        if (!runs.empty() && runs.back().ch == r.ch)
            throw std::invalid_argument("adjacent runs must use different characters");
        runs.push_back(r);
        run_end.push_back(run_end.back() + r.exp);
    }

    void ensure_dawg(std::uint64_t m) {
        while (dawg.symbol_count() < m) {
            const Run r = runs[dawg.symbol_count()];
            event_buf.clear();
            dawg.extend(run_symbol(r.ch, r.exp), event_buf);
            for (const auto& ev : event_buf) {
                if (ev.kind == DawgEvent::Kind::NewSink) continue;
                dom[DomKey{ev.owner, symbol_char(ev.context), symbol_char(ev.symbol)}].insert(
                    Point{symbol_exp(ev.context), symbol_exp(ev.symbol)});
            }
        }
    }

    StateId resolve(StateId h, std::uint64_t d) const {
        while (h != dawg.source() && dawg.state(dawg.state(h).link).len >= d) h = dawg.state(h).link;
        return h;
    }

    /// Largest exponent of an edge out of h labelled with character c, or 0.
    std::uint64_t max_edge_exp(StateId h, Code c) const {
        const auto& edges = dawg.state(h).edges;
        auto it = edges.lower_bound(run_symbol(c, 0) + (std::uint64_t{1} << kExpBits));
        if (it == edges.begin()) return 0;
        --it;
        return symbol_char(it->first) == c ? symbol_exp(it->first) : 0;
    }

    const DomSet* dom_of(StateId h, Code a, Code b) const {
        auto it = dom.find(DomKey{h, a, b});
        return it == dom.end() ? nullptr : &it->second;
    }

    /// Start of the occurrence whose leading run ends at run `ctx`, taking its last p characters.
    std::uint64_t src_at(std::uint64_t ctx, std::uint64_t p) const { return run_end[ctx] - p + 1; }

    /// Context run of the first occurrence C·U·X recorded as a point of h.
    std::uint64_t point_context_run(StateId h, std::uint64_t ulen, Symbol c, Symbol x) const {
        const StateId s = *dawg.transition(h, x);
        std::uint64_t e;
        if (dawg.is_primary(h, s)) {
            const auto w = dawg.suffix_link_reverse_lookup(s, c);
            assert(w.has_value());
            e = dawg.state(*w).pos;
        } else {
            e = dawg.state(s).pos;
        }
        return e - ulen - 1;
    }

    Task<Unit> run() {
        while (co_await gate(k)) {
            auto [len, src] = co_await compute();
            const std::uint64_t start = l + 1;
            if (src == 0)
                out.push_back(Factor::literal(start, runs[k - 1].ch));
            else
                out.push_back(Factor::copy(start, src, len));
            ++z;
            l += len;
            while (k <= runs.size() && run_end[k] <= l) ++k;
        }
        co_return Unit{};
    }

    Task<std::pair<std::uint64_t, std::uint64_t>> compute() {
        ensure_dawg(k - 1);
        assert(dawg.symbol_count() == k - 1);
        const Code a = runs[k - 1].ch;
        const std::uint64_t d = runs[k - 1].exp;
        const std::uint64_t j = l - run_end[k - 1] + 1;
        const std::uint64_t p = d - j + 1;

        std::uint64_t best = p;
        std::uint64_t best_src;
        if (j == 1) {
            const std::uint64_t g = max_edge_exp(dawg.source(), a);
            if (g == 0) co_return std::pair<std::uint64_t, std::uint64_t>{1, 0};
            const std::uint64_t e = dawg.state(*dawg.transition(dawg.source(), run_symbol(a, g))).pos;
            if (g < d) co_return std::pair<std::uint64_t, std::uint64_t>{g, run_end[e - 1] + 1};
            best_src = src_at(e, p);
        } else {
            best_src = l;
        }

        StateId h = dawg.source();
        std::uint64_t ulen = 0;
        std::uint64_t matched = p;
        for (std::uint64_t t = 1;; ++t) {
            if (!co_await gate(k + t)) break;
            ensure_dawg(k + t - 1);
            h = resolve(h, ulen);
            const Code b = runs[k + t - 1].ch;
            const std::uint64_t q = runs[k + t - 1].exp;
            const Symbol bq = run_symbol(b, q);

            if (dawg.state(h).len == ulen) {
                const DomSet* ds = dom_of(h, a, b);
                const auto pt = ds ? ds->max_x_with_y_at_least(q) : std::nullopt;
                if (pt && pt->x >= p) {
                    best = matched + q;
                    best_src = src_at(point_context_run(h, ulen, run_symbol(a, pt->x), run_symbol(b, pt->y)), p);
                    const auto next = dawg.transition(h, bq);
                    if (!next) break;
                    if (!dawg.is_primary(h, *next)) {
                        const Run ctx = runs[dawg.state(*next).pos - (ulen + 1) - 1];
                        if (ctx.ch != a || ctx.exp < p) break;
                    }
                    h = *next;
                    ++ulen;
                    matched += q;
                    continue;
                }
                const auto pt2 = ds ? ds->max_y_with_x_at_least(p) : std::nullopt;
                if (pt2) {
                    best = matched + pt2->y;
                    best_src = src_at(point_context_run(h, ulen, run_symbol(a, pt2->x), run_symbol(b, pt2->y)), p);
                }
                break;
            }

            // Every occurrence of the matched runs is preceded by the same a-run.
            if (const auto next = dawg.transition(h, bq)) {
                h = *next;
                ++ulen;
                matched += q;
                best = matched;
                best_src = src_at(dawg.state(h).pos - ulen, p);
                continue;
            }
            const std::uint64_t y = max_edge_exp(h, b);
            if (y > 0) {
                best = matched + std::min(y, q);
                const std::uint64_t e = dawg.state(*dawg.transition(h, run_symbol(b, y))).pos;
                best_src = src_at(e - ulen - 1, p);
            }
            break;
        }
        co_return std::pair<std::uint64_t, std::uint64_t>{best, best_src};
    }
};

RleFactorizer::RleFactorizer() : impl_(std::make_unique<Impl>()) {}
RleFactorizer::~RleFactorizer() = default;
RleFactorizer::RleFactorizer(RleFactorizer&&) noexcept = default;
RleFactorizer& RleFactorizer::operator=(RleFactorizer&&) noexcept = default;

std::vector<Factor> RleFactorizer::push_run(Code ch, std::uint64_t exp) {
    if (impl_->finished) throw std::logic_error("push after finish");
    if (impl_->pending.exp != 0) {
        impl_->close_run(impl_->pending);
        impl_->pending = {};
    }
    impl_->close_run({ch, exp});
    impl_->pump();
    return std::exchange(impl_->out, {});
}

std::vector<Factor> RleFactorizer::push(std::span<const Code> chars) {
    if (impl_->finished) throw std::logic_error("push after finish");
    const std::size_t before = impl_->runs.size();
    for (Code c : chars) {
        Run& pr = impl_->pending;
        if (pr.exp != 0 && pr.ch == c) {
            ++pr.exp;
            continue;
        }
        if (pr.exp != 0) impl_->close_run(pr);
        pr = {c, 1};
    }
    if (impl_->runs.size() != before) impl_->pump();
    return std::exchange(impl_->out, {});
}

std::vector<Factor> RleFactorizer::finish() {
    if (!impl_->finished) {
        if (impl_->pending.exp != 0) impl_->close_run(impl_->pending);
        impl_->pending = {};
        impl_->finished = true;
        impl_->pump();
    }
    return std::exchange(impl_->out, {});
}

RleStats RleFactorizer::stats() const {
    RleStats s;
    s.m = impl_->runs.size();
    s.n = impl_->run_end.back() + impl_->pending.exp;
    s.z = impl_->z;
    s.dawg_states = impl_->dawg.state_count();
    s.dawg_edges = impl_->dawg.edge_count();
    s.dom_sets = impl_->dom.size();
    for (const auto& [key, ds] : impl_->dom) s.dom_points += ds.size();
    return s;
}

const Dawg& RleFactorizer::dawg() const { return impl_->dawg; }

std::vector<Factor> RleFactorizer::factorize(std::span<const Code> text) {
    RleFactorizer f;
    auto out = f.push(text);
    auto rest = f.finish();
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

std::vector<Factor> RleFactorizer::factorize_runs(std::span<const Run> runs) {
    RleFactorizer f;
    std::vector<Factor> out;
    for (Run r : runs) {
        auto part = f.push_run(r.ch, r.exp);
        out.insert(out.end(), part.begin(), part.end());
    }
    auto rest = f.finish();
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace lzdawg
