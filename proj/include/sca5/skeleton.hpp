#pragma once

// Skeleton words: one symbol per zero site of a configuration, '+' if the
// particle block immediately preceding the zero has length >= 2 and '-'
// otherwise.  The cyclic word up to rotation (the skeleton orbit) is
// invariant under the dynamics and indexes irreducible components when the
// factorization assumptions hold.

#include "sca5/ring.hpp"

#include <stdexcept>
#include <string>

namespace sca5 {

struct SkeletonWord {
    std::string symbols;  // over {'+','-'}, rooted at the minimal zero site, cyclic
};

template <std::size_t W>
SkeletonWord skeleton(const BasicRing<W>& x) {
    const int L = x.length();
    if (x.popcount() == L) throw std::invalid_argument("skeleton: needs at least one zero site");
    SkeletonWord word;
    for (int j = 0; j < L; ++j) {
        if (x.bit(j)) continue;
        int block = 0;
        while (block < L && x.bit(j - 1 - block)) ++block;
        word.symbols.push_back(block >= 2 ? '+' : '-');
    }
    return word;
}

namespace detail {
inline std::string rotate_string(const std::string& s, std::size_t r) {
    return s.substr(r) + s.substr(0, r);
}
}  // namespace detail

// Number of distinct rotations of the cyclic word.
inline int orbit_size(const SkeletonWord& word) {
    const std::string& s = word.symbols;
    const auto n = s.size();
    for (std::size_t d = 1; d < n; ++d)
        if (n % d == 0 && detail::rotate_string(s, d) == s) return int(d);
    return int(n);
}

// Lexicographically smallest rotation ('+' orders before '-').
inline std::string canonical_orbit_word(const SkeletonWord& word) {
    std::string best = word.symbols;
    for (std::size_t r = 1; r < word.symbols.size(); ++r) {
        std::string cand = detail::rotate_string(word.symbols, r);
        if (cand < best) best = cand;
    }
    return best;
}

}  // namespace sca5
