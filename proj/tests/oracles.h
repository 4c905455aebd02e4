// Brute-force reference implementations used only by the tests. Nothing
// here calls into the library's algorithmic code paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "paradigm/edit_tree.h"

namespace oracle {

/// Enumerates every substring pair; same tie-breaking as the library.
inline paradigm::CommonSubstring brute_force_lcs(const std::u32string& x, const std::u32string& y) {
    paradigm::CommonSubstring best;
    for (size_t sx = 0; sx < x.size(); ++sx) {
        for (size_t sy = 0; sy < y.size(); ++sy) {
            size_t len = 0;
            while (sx + len < x.size() && sy + len < y.size() && x[sx + len] == y[sy + len]) ++len;
            if (len > best.length) best = {len, sx, sy};
        }
    }
    return best;
}

/// Maximum total weight over all full matchings of size min(N, M), by
/// enumerating injections of the smaller side into the larger.
inline double brute_force_matching(const std::vector<std::vector<double>>& w) {
    const size_t n = w.size();
    const size_t m = n == 0 ? 0 : w[0].size();
    if (n == 0 || m == 0) return 0.0;
    const bool rows_small = n <= m;
    const size_t small = rows_small ? n : m;
    const size_t large = rows_small ? m : n;
    std::vector<size_t> perm(large);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1.0;
    do {
        double total = 0.0;
        for (size_t k = 0; k < small; ++k) total += rows_small ? w[k][perm[k]] : w[perm[k]][k];
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Random strings over a mix of scripts, with a small alphabet so that
/// common substrings actually occur.
class UnicodeStrings {
public:
    explicit UnicodeStrings(uint64_t seed) : rng_(seed) {}

    std::u32string next(size_t max_len) {
        static const std::u32string alphabet =
            U"abcdeéರಕಾпри中文\U0001F600ß";
        std::uniform_int_distribution<size_t> len_dist(0, max_len);
        std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
        std::u32string out(len_dist(rng_), U'a');
        for (auto& c : out) c = alphabet[pick(rng_)];
        return out;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
