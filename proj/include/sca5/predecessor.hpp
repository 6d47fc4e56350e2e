#pragma once

// Predecessor calculus: the bracket decomposition of a configuration, direct
// construction of the full predecessor set B(x), per-predecessor bookkeeping
// of l(x', x) (fired 1110 -> 1101 transitions) and #010(x'), and the exact
// balance identity
//
//   sum_{x' in B(x)} (alpha/(1-alpha))^(l(x',x) + #010(x'))
//     = alpha^#010(x) / (1-alpha)^(#1110(x) + #010(x)).
//
// Decomposition rules, applied cyclically:
//   1. every 110 occurrence is an atomic unit (occurrences never overlap);
//   2. a unit followed by a literal 1 forms a (110)1 group; a literal 0
//      followed by a literal 1 forms an 01 pair (pairs never overlap);
//   3. a (110)1 group followed by adjacent 01 pairs absorbs them (brace
//      group); a bare (110)1 group is a double-bracket group; maximal runs
//      of remaining pairs are angle groups;
//   4. everything else is an outside segment, bitwise fixed in time.
//
// A group admits a binary predecessor choice exactly when the two sites
// after its closer are both 1: the final 01 of an angle/brace may stay 01 or
// restore to 10, and a double-bracket (110)1 may stay 1101 or restore to
// 1110.  Brace heads and double-brackets followed by 0 always restore to
// 1110 (one fired transition each).

#include "sca5/rational.hpp"
#include "sca5/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sca5 {

enum class SegmentKind { outside, brace, double_bracket, angle };

struct Segment {
    SegmentKind kind = SegmentKind::outside;
    int start = 0;   // first site (for brace/double_bracket: the unit's 1)
    int length = 0;  // sites covered, cyclic from start
    int pairs = 0;   // number of 01 pairs inside (brace/angle)
    bool choice = false;  // closer directly followed by bit pattern 11
};

struct BracketDecomposition {
    Ring x;
    std::vector<Segment> segments;  // cyclic order by start site
    int brace_choices = 0;          // brace groups whose closer precedes 11
    int dbracket_choices = 0;       // double-bracket groups likewise
    int angle_choices = 0;          // angle groups likewise

    int choice_count() const { return brace_choices + dbracket_choices + angle_choices; }
};

inline BracketDecomposition bracket_decompose(const Ring& x) {
    const int L = x.length();
    std::vector<char> in_unit(std::size_t(L), 0);
    std::vector<char> covered(std::size_t(L), 0);

    const std::vector<int> unit_starts = occurrence_starts(x, "110");
    for (int s : unit_starts)
        for (int d = 0; d < 3; ++d) in_unit[std::size_t((s + d) % L)] = 1;

    const auto literal = [&](int site) { return !in_unit[std::size_t(((site % L) + L) % L)]; };

    // (110)1 groups: unit followed by a literal 1.
    std::vector<int> head_starts;  // unit start s, group covers s .. s+3
    for (int s : unit_starts)
        if (literal(s + 3) && x.bit(s + 3)) head_starts.push_back(s);

    // 01 pairs among literal sites (disjoint by construction).
    std::vector<char> pair_at(std::size_t(L), 0);
    for (int t = 0; t < L; ++t)
        if (literal(t) && !x.bit(t) && literal(t + 1) && x.bit((t + 1) % L)) pair_at[std::size_t(t)] = 1;

    BracketDecomposition dec{x, {}, 0, 0, 0};
    std::vector<char> pair_taken(std::size_t(L), 0);

    // Brace / double-bracket groups: walk pairs attached after each (110)1.
    for (int s : head_starts) {
        Segment seg;
        seg.start = s;
        int t = (s + 4) % L;
        while (pair_at[std::size_t(t)] && !pair_taken[std::size_t(t)]) {
            pair_taken[std::size_t(t)] = 1;
            ++seg.pairs;
            t = (t + 2) % L;
        }
        seg.kind = seg.pairs > 0 ? SegmentKind::brace : SegmentKind::double_bracket;
        seg.length = 4 + 2 * seg.pairs;
        dec.segments.push_back(seg);
    }

    // Angle groups: maximal cyclic runs of the remaining pairs.
    std::vector<int> run_heads;
    int first_free_pair = -1;
    for (int t = 0; t < L; ++t) {
        if (!pair_at[std::size_t(t)] || pair_taken[std::size_t(t)]) continue;
        if (first_free_pair < 0) first_free_pair = t;
        const int before = ((t - 2) % L + L) % L;
        if (!pair_at[std::size_t(before)] || pair_taken[std::size_t(before)]) run_heads.push_back(t);
    }
    // pairs tiling the whole ring have no head; cut at the first pair
    if (first_free_pair >= 0 && run_heads.empty()) run_heads.push_back(first_free_pair);
    for (int head : run_heads) {
        Segment seg;
        seg.kind = SegmentKind::angle;
        seg.start = head;
        int t = head;
        while (pair_at[std::size_t(t)] && !pair_taken[std::size_t(t)]) {
            pair_taken[std::size_t(t)] = 1;
            ++seg.pairs;
            t = (t + 2) % L;
        }
        seg.length = 2 * seg.pairs;
        dec.segments.push_back(seg);
    }

    for (const Segment& seg : dec.segments)
        for (int d = 0; d < seg.length; ++d) covered[std::size_t((seg.start + d) % L)] = 1;

    // Outside segments: maximal uncovered runs (units included).
    int uncovered = 0;
    for (int t = 0; t < L; ++t) uncovered += !covered[std::size_t(t)];
    if (uncovered == L) {
        dec.segments.push_back({SegmentKind::outside, 0, L, 0, false});
    } else if (uncovered > 0) {
        for (int t = 0; t < L; ++t) {
            if (covered[std::size_t(t)] || !covered[std::size_t(((t - 1) % L + L) % L)]) continue;
            Segment seg{SegmentKind::outside, t, 0, 0, false};
            int u = t;
            while (!covered[std::size_t(u)]) {
                ++seg.length;
                u = (u + 1) % L;
            }
            dec.segments.push_back(seg);
        }
    }

    for (Segment& seg : dec.segments) {
        if (seg.kind == SegmentKind::outside) continue;
        const int closer = (seg.start + seg.length - 1) % L;
        seg.choice = x.bit(closer + 1) && x.bit(closer + 2);
        if (seg.choice) {
            if (seg.kind == SegmentKind::brace) ++dec.brace_choices;
            if (seg.kind == SegmentKind::double_bracket) ++dec.dbracket_choices;
            if (seg.kind == SegmentKind::angle) ++dec.angle_choices;
        }
    }

    std::sort(dec.segments.begin(), dec.segments.end(),
              [](const Segment& a, const Segment& b) { return a.start < b.start; });
    return dec;
}

struct PredecessorWitness {
    Ring pred;
    int ell = 0;    // fired 1110 -> 1101 transitions on the edge pred -> x
    int n010 = 0;   // #010(pred)
    std::vector<bool> kept;  // per choice group: final 01 (or 1101) left in place
};

// The complete predecessor set B(x), one witness per choice vector over the
// groups whose closer precedes 11.  Distinct choice vectors give distinct
// predecessors; the merge assert guards the bookkeeping.
inline std::vector<PredecessorWitness> predecessor_enumerate(const Ring& x) {
    const BracketDecomposition dec = bracket_decompose(x);
    const int L = x.length();

    std::vector<const Segment*> choice_groups;
    for (const Segment& seg : dec.segments)
        if (seg.choice) choice_groups.push_back(&seg);
    const int c = int(choice_groups.size());
    if (c > 26) throw budget_exceeded("predecessor_enumerate: too many choice groups");

    std::map<Ring, std::size_t> seen;
    std::vector<PredecessorWitness> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << c); ++bits) {
        Ring pred = x;
        int ell = 0;
        std::vector<bool> kept;
        kept.resize(std::size_t(c));
        std::size_t which = 0;
        for (const Segment& seg : dec.segments) {
            if (seg.kind == SegmentKind::outside) continue;
            bool keep_last = false;
            if (seg.choice) {
                keep_last = (bits >> which) & 1u;
                kept[which] = keep_last;
                ++which;
            }
            // Head of a (110)1 group: 1101 restores to 1110 (one fired
            // transition) always for braces, and for double-brackets unless
            // the kept variant of a choice is selected.
            if (seg.kind == SegmentKind::brace ||
                (seg.kind == SegmentKind::double_bracket && !keep_last)) {
                pred.set(seg.start + 2, true);
                pred.set(seg.start + 3, false);
                ++ell;
            }
            // 01 pairs restore to 10, except a kept final pair.
            const int moved_pairs = seg.pairs - (keep_last && seg.pairs > 0 ? 1 : 0);
            const int first_pair = seg.kind == SegmentKind::brace ? seg.start + 4 : seg.start;
            for (int i = 0; i < moved_pairs; ++i) {
                const int p = (first_pair + 2 * i) % L;
                pred.set(p, true);
                pred.set(p + 1, false);
            }
        }
        PredecessorWitness w{pred, ell, count_pattern_wrapping(pred, "010"), kept};
        const auto [it, inserted] = seen.emplace(pred, out.size());
        if (inserted) {
            out.push_back(std::move(w));
        } else if (out[it->second].ell != w.ell || out[it->second].n010 != w.n010) {
            throw std::logic_error("predecessor_enumerate: merged witnesses disagree on (l, #010)");
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PredecessorWitness& a, const PredecessorWitness& b) { return a.pred < b.pred; });
    return out;
}

// Census of witnesses by the two excess counts over the forced baseline:
//   l(x',x)  = #11010(x) + l1,       #010(x') = #0010(x) + #01010(x) + l2.
// The counts must equal binom(#110111(x), l1) * binom(#00111(x)+#010111(x), l2).
inline std::map<std::pair<int, int>, long> lemma_census(const Ring& x) {
    const int base_ell = count_pattern_wrapping(x, "11010");
    const int base_n010 = count_pattern_wrapping(x, "0010") + count_pattern_wrapping(x, "01010");
    std::map<std::pair<int, int>, long> census;
    for (const PredecessorWitness& w : predecessor_enumerate(x))
        ++census[{w.ell - base_ell, w.n010 - base_n010}];
    return census;
}

struct BalanceReport {
    bool equal = false;           // left and right sides match exactly
    bool telescoping_ok = false;  // #0111 = #110111 + #00111 + #010111
    Rational lhs, rhs;
};

inline BalanceReport verify_balance_identity(const Ring& x, const NoiseParam& noise) {
    if (!noise.interior())
        throw std::invalid_argument("verify_balance_identity: alpha must lie strictly in (0, 1)");
    const Rational ratio = noise.alpha / (Rational(1) - noise.alpha);
    BalanceReport report;
    report.lhs = 0;
    for (const PredecessorWitness& w : predecessor_enumerate(x))
        report.lhs += pow_rational(ratio, w.ell + w.n010);
    const int k1 = count_pattern_wrapping(x, "1110");
    const int k2 = count_pattern_wrapping(x, "010");
    report.rhs = pow_rational(noise.alpha, k2) * pow_rational(Rational(1) - noise.alpha, -(k1 + k2));
    report.equal = report.lhs == report.rhs;
    report.telescoping_ok =
        count_pattern_wrapping(x, "0111") == count_pattern_wrapping(x, "110111") +
                                                 count_pattern_wrapping(x, "00111") +
                                                 count_pattern_wrapping(x, "010111");
    return report;
}

}  // namespace sca5
