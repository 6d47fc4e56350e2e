#pragma once

// Exact one-step transition structure out of a configuration.  All 2^k
// firing masks (k = #1110) are enumerated and grouped by raw target; each
// edge keeps the fire count l and a mask multiplicity so that probabilities
// can be evaluated lazily at any exact rational alpha:
//
//   f(x, target) = sum over edges  multiplicity * alpha^l * (1-alpha)^(k-l).

#include "sca5/rational.hpp"
#include "sca5/ring.hpp"
#include "sca5/rules.hpp"
#include "sca5/slice.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace sca5 {

struct TransitionEdge {
    Ring target;
    int ell;                        // fired 1110 -> 1101 transitions on this edge
    std::int64_t multiplicity = 1;  // number of masks realizing (target, ell)
};

struct TransitionRecord {
    Ring source;
    int k = 0;  // #1110(source); the mask space has size 2^k
    std::vector<TransitionEdge> edges;

    Rational probability_to(const Ring& target, const NoiseParam& noise) const {
        Rational p = 0;
        for (const auto& e : edges)
            if (e.target == target)
                p += Rational(e.multiplicity) * pow_rational(noise.alpha, e.ell) *
                     pow_rational(Rational(1) - noise.alpha, k - e.ell);
        return p;
    }

    Rational row_sum(const NoiseParam& noise) const {
        Rational s = 0;
        for (const auto& e : edges)
            s += Rational(e.multiplicity) * pow_rational(noise.alpha, e.ell) *
                 pow_rational(Rational(1) - noise.alpha, k - e.ell);
        return s;
    }
};

inline TransitionRecord successors(const Ring& x) {
    const std::vector<int> starts = occurrence_starts(x, firing_pattern_v);
    const int k = int(starts.size());
    if (k > 24) throw budget_exceeded("successors: 2^" + std::to_string(k) + " masks is unreasonable");

    std::map<std::pair<Ring, int>, std::int64_t> grouped;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        auto fire = Ring::zeros(x.length());
        int ell = 0;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1u) {
                fire.set(starts[std::size_t(i)], true);
                ++ell;
            }
        const Ring target = step_v_with_fire_bits(x, fire).next;
        ++grouped[{target, ell}];
    }

    TransitionRecord rec{x, k, {}};
    rec.edges.reserve(grouped.size());
    for (const auto& [key, mult] : grouped) rec.edges.push_back({key.first, key.second, mult});
    return rec;
}

// Oracle-grade predecessor set: members of the slice with a positive-probability
// edge into x.  Conservation confines predecessors to x's own slice.
inline std::vector<Ring> predecessor_set_brute(const Ring& x, const Slice& slice) {
    std::vector<Ring> preds;
    for (const Ring& cand : slice.members) {
        for (const auto& e : successors(cand).edges)
            if (e.target == x) {
                preds.push_back(cand);
                break;
            }
    }
    return preds;
}

}  // namespace sca5
