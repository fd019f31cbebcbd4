#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lzdawg/alphabet.hpp"
#include "lzdawg/factor.hpp"

namespace lzdawg::testing {

using Text = std::vector<Code>;

inline Text from_string(const std::string& s) { return Text(s.begin(), s.end()); }

inline Text random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    Text t(n);
    for (auto& c : t) c = static_cast<Code>(rng() % sigma);
    return t;
}

/// Random text with long runs, so the RLE paths see exponents above 1.
inline Text runny_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    Text t;
    while (t.size() < n) {
        const Code c = static_cast<Code>(rng() % sigma);
        const std::size_t len = 1 + rng() % 6;
        for (std::size_t i = 0; i < len && t.size() < n; ++i) t.push_back(c);
    }
    return t;
}

inline Text power_of_a(std::size_t n) { return Text(n, 0); }

inline Text ab_power(std::size_t n) {
    Text t;
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back(0);
        t.push_back(1);
    }
    return t;
}

inline Text fibonacci_word(std::size_t min_len) {
    Text a{0}, b{0, 1};
    while (b.size() < min_len) {
        Text c = b;
        c.insert(c.end(), a.begin(), a.end());
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

/// De Bruijn sequence B(k, n) over codes 0..k-1.
inline Text de_bruijn(unsigned k, unsigned n) {
    Text seq;
    std::vector<unsigned> a(k * n, 0);
    auto db = [&](auto&& self, unsigned t, unsigned p) -> void {
        if (t > n) {
            if (n % p == 0)
                for (unsigned j = 1; j <= p; ++j) seq.push_back(static_cast<Code>(a[j]));
            return;
        }
        a[t] = a[t - p];
        self(self, t + 1, p);
        for (unsigned j = a[t - p] + 1; j < k; ++j) {
            a[t] = j;
            self(self, t + 1, t);
        }
    };
    db(db, 1, 1);
    return seq;
}

struct Sample {
    Text text;
    unsigned sigma;
};

/// Random strings over the five alphabet sizes plus the structured families.
inline std::vector<Sample> corpus(std::uint64_t seed, std::size_t random_count, std::size_t max_len) {
    std::mt19937_64 rng(seed);
    const unsigned sigmas[] = {2, 4, 16, 64, 256};
    std::vector<Sample> out;
    for (std::size_t i = 0; i < random_count; ++i) {
        const unsigned sigma = sigmas[i % 5];
        const std::size_t n = rng() % (max_len + 1);
        out.push_back({i % 4 == 3 ? runny_text(rng, n, sigma) : random_text(rng, n, sigma), sigma});
    }
    for (std::size_t n : {0, 1, 2, 3, 7, 64, 500, 2000}) {
        out.push_back({power_of_a(n), 2});
        out.push_back({ab_power(n / 2 + 1), 2});
    }
    for (std::size_t n : {1, 10, 100, 1000, 2000}) out.push_back({fibonacci_word(n), 2});
    out.push_back({de_bruijn(2, 10), 2});
    out.push_back({de_bruijn(4, 5), 4});
    out.push_back({de_bruijn(16, 2), 16});
    out.push_back({de_bruijn(64, 2), 64});
    return out;
}

/// True when lengths match the reference and every factor is a valid copy.
inline bool agrees(const std::vector<Factor>& got, const std::vector<Factor>& ref, const Text& text) {
    return factor_lengths(got) == factor_lengths(ref) && first_invalid_factor(got, text) == got.size();
}

}  // namespace lzdawg::testing
