#include "lzdawg/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace lzdawg {

std::vector<Factor> naive_factorize(std::span<const Code> text) {
    std::vector<Factor> out;
    const std::size_t n = text.size();
    std::size_t l = 0;
    while (l < n) {
        std::size_t best = 0, src = 0;
        for (std::size_t p = 0; p < l; ++p) {
            std::size_t k = 0;
            while (l + k < n && text[p + k] == text[l + k]) ++k;
            if (k > best) {
                best = k;
                src = p;
                if (l + k == n) break;
            }
        }
        if (best == 0) {
            out.push_back(Factor::literal(l + 1, text[l]));
            ++l;
        } else {
            out.push_back(Factor::copy(l + 1, src + 1, best));
            l += best;
        }
    }
    return out;
}

std::vector<Run> rle_encode(std::span<const Code> text) {
    std::vector<Run> runs;
    for (Code c : text) {
        if (!runs.empty() && runs.back().ch == c)
            ++runs.back().exp;
        else
            runs.push_back({c, 1});
    }
    return runs;
}

std::vector<Code> rle_decode(std::span<const Run> runs) {
    std::vector<Code> out;
    for (Run r : runs) out.insert(out.end(), r.exp, r.ch);
    return out;
}

std::set<std::uint64_t> brute_endpos(std::span<const std::uint64_t> text, std::span<const std::uint64_t> pattern) {
    std::set<std::uint64_t> ends;
    if (pattern.size() > text.size()) return ends;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
        if (std::equal(pattern.begin(), pattern.end(), text.begin() + i)) ends.insert(i + pattern.size());
    }
    return ends;
}

std::vector<Code> apply_factors(const std::vector<Factor>& fs) {
    std::vector<Code> out;
    for (const Factor& f : fs) {
        if (f.is_literal()) {
            out.push_back(f.ch);
            continue;
        }
        if (f.src == 0 || f.src > out.size()) throw std::invalid_argument("copy source out of range");
        const std::size_t from = f.src - 1;
        for (std::uint64_t i = 0; i < f.len; ++i) out.push_back(out[from + i]);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Factor& f) {
    if (f.is_literal()) return os << "L(" << unsigned{f.ch} << ")";
    return os << "C(" << f.src << "," << f.len << ")";
}

std::vector<std::uint64_t> factor_lengths(const std::vector<Factor>& fs) {
    std::vector<std::uint64_t> v;
    v.reserve(fs.size());
    for (const Factor& f : fs) v.push_back(f.length());
    return v;
}

std::size_t first_invalid_factor(const std::vector<Factor>& fs, const std::vector<Code>& text) {
    std::uint64_t pos = 1;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const Factor& f = fs[i];
        if (f.start != pos || pos + f.length() - 1 > text.size()) return i;
        if (f.is_literal()) {
            if (text[pos - 1] != f.ch) return i;
        } else {
            if (f.len == 0 || f.src < 1 || f.src >= pos) return i;
            for (std::uint64_t k = 0; k < f.len; ++k)
                if (text[f.src - 1 + k] != text[pos - 1 + k]) return i;
        }
        pos += f.length();
    }
    return pos == text.size() + 1 ? fs.size() : fs.size() + 1;
}

}  // namespace lzdawg
