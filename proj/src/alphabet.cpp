#include "lzdawg/alphabet.hpp"

#include <bit>
#include <string>

namespace lzdawg {

unsigned AlphabetCfg::bits_for(unsigned sigma) {
    unsigned b = 1;
    while ((1u << b) < sigma) ++b;
    return b;
}

AlphabetCfg AlphabetCfg::make(unsigned sigma, unsigned r) {
    if (sigma < 2 || sigma > 256)
        throw AlphabetError("alphabet size must lie in [2, 256], got " + std::to_string(sigma));
    if (r == 0) throw AlphabetError("block size must be positive");
    AlphabetCfg cfg;
    cfg.sigma = sigma;
    cfg.bits_per_char = bits_for(sigma);
    cfg.r = r;
    if (cfg.meta_bits() > 63)
        throw AlphabetError("block of " + std::to_string(r) + " characters does not fit in a word");
    return cfg;
}

namespace {

std::uint64_t pack_prefix(std::span<const Code> t, const AlphabetCfg& cfg) {
    std::uint64_t v = 0;
    for (Code c : t) {
        if (c >= cfg.sigma) throw AlphabetError("character code " + std::to_string(c) + " outside alphabet");
        v = (v << cfg.bits_per_char) | c;
    }
    return v;
}

}  // namespace

MetaChar pack(std::span<const Code> chars, const AlphabetCfg& cfg) {
    if (chars.size() != cfg.r)
        throw AlphabetError("pack expects exactly " + std::to_string(cfg.r) + " characters");
    return MetaChar{pack_prefix(chars, cfg)};
}

void unpack(MetaChar a, const AlphabetCfg& cfg, std::span<Code> out) {
    for (unsigned i = 0; i < cfg.r && i < out.size(); ++i) out[i] = char_at(a, i, cfg);
}

MetaChar reverse_meta(MetaChar a, const AlphabetCfg& cfg) {
    std::uint64_t v = a.value;
    std::uint64_t out = 0;
    const std::uint64_t mask = cfg.char_mask();
    for (unsigned i = 0; i < cfg.r; ++i) {
        out = (out << cfg.bits_per_char) | (v & mask);
        v >>= cfg.bits_per_char;
    }
    return MetaChar{out};
}

BitInterval prefix_interval(std::span<const Code> t, const AlphabetCfg& cfg) {
    if (t.size() > cfg.r) throw AlphabetError("prefix longer than a block");
    const unsigned free_bits = static_cast<unsigned>(cfg.r - t.size()) * cfg.bits_per_char;
    const std::uint64_t head = pack_prefix(t, cfg);
    const std::uint64_t fill = free_bits == 0 ? 0 : (std::uint64_t{1} << free_bits) - 1;
    const std::uint64_t lo = free_bits == 64 ? 0 : head << free_bits;
    return BitInterval{lo, lo | fill};
}

BitInterval suffix_interval(std::span<const Code> t, const AlphabetCfg& cfg) {
    if (t.size() >= cfg.r) throw AlphabetError("suffix must be shorter than a block");
    Code rev[64];
    for (std::size_t i = 0; i < t.size(); ++i) rev[i] = t[t.size() - 1 - i];
    return prefix_interval(std::span<const Code>(rev, t.size()), cfg);
}

unsigned common_prefix_chars(MetaChar a, MetaChar b, const AlphabetCfg& cfg) {
    const std::uint64_t x = a.value ^ b.value;
    if (x == 0) return cfg.r;
    const unsigned lead = static_cast<unsigned>(std::countl_zero(x)) - (64 - cfg.meta_bits());
    return lead / cfg.bits_per_char;
}

}  // namespace lzdawg
