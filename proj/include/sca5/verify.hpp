#pragma once

// Machine-checkable law suites.  Each suite sweeps an exhaustive range and
// returns a verdict with a case count and the first counterexample, so CI
// can gate on the model's structural identities:
//
//   * flux-table identities and the u/v conjugation flip;
//   * conservation of #1 and #110 under every firing mask;
//   * one-step pattern implications (forward and backward);
//   * predecessor-set characterization and the periodicity criterion;
//   * single fire-count per (source, target) transition;
//   * shift equivariance of the component decomposition;
//   * partition factorization, skeleton fibers and the dominant shell;
//   * closed-form stationarity against the exact numeric solve;
//   * component independence of the mean flux;
//   * predecessor construction vs. brute force, cardinality, census
//     binomials, the balance identity and back-map uniqueness.

#include "sca5/components.hpp"
#include "sca5/flux.hpp"
#include "sca5/partition.hpp"
#include "sca5/predecessor.hpp"
#include "sca5/rational.hpp"
#include "sca5/ring.hpp"
#include "sca5/rules.hpp"
#include "sca5/slice.hpp"
#include "sca5/stationary.hpp"
#include "sca5/transitions.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sca5 {

struct LawVerdict {
    std::string law;
    bool pass = true;
    long long cases = 0;
    std::string detail;

    LawVerdict() = default;
    explicit LawVerdict(std::string name) : law(std::move(name)) {}

    void fail(const std::string& counterexample) {
        if (pass) detail = counterexample;
        pass = false;
    }
};

namespace detail {

inline std::vector<Ring> all_rings(int L) {
    std::vector<Ring> out;
    out.reserve(std::size_t(1) << L);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << L); ++v) out.push_back(Ring::from_value(L, v));
    return out;
}

// All (n1, n110) pairs with a nonempty slice for this L, with the slices.
inline std::vector<Slice> all_slices(int L) {
    std::vector<Slice> out;
    for (int n1 = 0; n1 <= L; ++n1)
        for (int n110 = 0; 3 * n110 <= L; ++n110) {
            Slice s = enumerate_slice(L, n1, n110);
            if (!s.empty()) out.push_back(std::move(s));
        }
    return out;
}

inline std::string show(const Ring& x) { return x.to_string(); }

template <class T>
std::string str(const T& value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------- tables --

inline std::vector<LawVerdict> verify_flux_tables() {
    LawVerdict identities{"flux-table-identities"};
    LawVerdict branch{"deterministic-branch"};
    LawVerdict flip{"conjugation-flip-identity"};
    for (int bits = 0; bits < 16; ++bits) {
        const int w = bits >> 3 & 1, x = bits >> 2 & 1, y = bits >> 1 & 1, z = bits & 1;
        for (int b = 0; b <= 1; ++b) {
            ++identities.cases;
            if (q_flux(w, x, y, 1, b) != 0 || q_flux(w, x, 0, z, b) != 0 ||
                q_flux(w, 0, 1, 0, b) != 1 || q_flux(w, 1, 0, 1, b) != 0)
                identities.fail("wxyz=" + std::to_string(bits) + " b=" + std::to_string(b));
            // conjugation: q1(z,y,x,w; a) - y == -q(w,x,y,z; b) with a = 1 - b
            ++flip.cases;
            if (q1_flux(z, y, x, w, 1 - b) - y != -q_flux(w, x, y, z, b))
                flip.fail("wxyz=" + std::to_string(bits) + " b=" + std::to_string(b));
        }
        ++branch.cases;
        if (q1_flux(w, x, y, z, 0) != q0_flux(w, x, y, z))
            branch.fail("wxyz=" + std::to_string(bits));
    }
    return {identities, branch, flip};
}

// ---------------------------------------------------- one-step exhaustive --

inline std::vector<LawVerdict> verify_one_step_laws(int Lmax) {
    LawVerdict conserved{"conserved-quantities"};
    LawVerdict forward{"one-step-forward-implications"};
    LawVerdict backward{"one-step-backward-implications"};

    const auto check_pair = [&](const Ring& pre, const Ring& post) {
        const int L = pre.length();
        ++conserved.cases;
        if (count_pattern_wrapping(post, "1") != count_pattern_wrapping(pre, "1") ||
            count_pattern_wrapping(post, "110") != count_pattern_wrapping(pre, "110"))
            conserved.fail(detail::show(pre) + " -> " + detail::show(post));
        ++forward.cases;
        ++backward.cases;
        for (int j = 0; j < L; ++j) {
            const auto p = [&](int i) { return pre.bit(j + i); };
            const auto c = [&](int i) { return post.bit(j + i); };
            bool ok = true;
            if (!p(0) && !p(1) && c(1)) ok = false;                              // 00 keeps the right site empty
            if (p(0) && p(1) && !c(0)) ok = false;                               // 11 keeps the left site occupied
            if (!p(-1) && p(0) && !p(1) && !(!c(0) && c(1))) ok = false;         // isolated particle hops
            if (p(0) && !p(1) && p(2) && !((c(0) && !c(1)) || (!c(0) && c(1)))) ok = false;  // 101 -> 10 or 01
            if (!p(-2) && p(-1) && p(0) && !p(1) && !(c(-1) && c(0) && !c(1))) ok = false;   // 0110 persists
            if (!ok) forward.fail(detail::show(pre) + " -> " + detail::show(post) + " at j=" + std::to_string(j));

            bool okb = true;
            if (c(-1) && c(0) && !p(0)) okb = false;        // 11 now forces 1 before
            if (!c(-1) && !c(0) && p(-1)) okb = false;      // 00 now forces 0 before
            if (!c(0) && c(1) && !((p(0) && !p(1)) || (!p(0) && p(1)))) okb = false;  // 01 from 10 or 01
            if (!c(0) && c(1) && !c(2) && c(3) && !(p(0) && !p(1))) okb = false;      // 0101 pins 10
            if (!okb) backward.fail(detail::show(pre) + " -> " + detail::show(post) + " at j=" + std::to_string(j));
        }
    };

    for (int L = min_ring_length; L <= Lmax; ++L) {
        for (const Ring& x : detail::all_rings(L)) {
            const std::vector<int> starts = occurrence_starts(x, firing_pattern_v);
            const int k = int(starts.size());
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
                auto fire = Ring::zeros(L);
                for (int i = 0; i < k; ++i)
                    if (mask >> i & 1u) fire.set(starts[std::size_t(i)], true);
                check_pair(x, step_v_with_fire_bits(x, fire).next);
            }
            // u-system conservation under every a-mask
            const std::vector<int> ustarts = occurrence_starts(x, firing_pattern_u);
            const int uk = int(ustarts.size());
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << uk); ++mask) {
                auto a_bits = Ring::zeros(L);
                for (int i = 0; i < uk; ++i)
                    if (mask >> i & 1u) a_bits.set(ustarts[std::size_t(i)], true);
                const Ring next = step_u_with_a_bits(x, a_bits);
                ++conserved.cases;
                if (count_pattern_wrapping(next, "1") != count_pattern_wrapping(x, "1") ||
                    count_pattern_wrapping(next, "110") != count_pattern_wrapping(x, "110"))
                    conserved.fail("u-step " + detail::show(x) + " -> " + detail::show(next));
            }
        }
    }
    return {conserved, forward, backward};
}

// ------------------------------------------------- predecessor structure --

inline std::vector<LawVerdict> verify_predecessor_characterization(int Lmax) {
    LawVerdict nonempty{"predecessor-nonempty"};
    LawVerdict frozen{"frozen-predecessor-characterization"};
    for (int L = min_ring_length; L <= Lmax; ++L) {
        const std::vector<Ring> rings = detail::all_rings(L);
        std::map<Ring, std::set<Ring>> preds;
        for (const Ring& x : rings)
            for (const auto& e : successors(x).edges) preds[e.target].insert(x);
        for (const Ring& x : rings) {
            const auto& b = preds[x];
            ++nonempty.cases;
            if (b.empty()) nonempty.fail(detail::show(x));
            ++frozen.cases;
            const bool singleton_self = b.size() == 1 && *b.begin() == x;
            const int n1 = x.popcount();
            const bool characterized = n1 == 0 || n1 == L ||
                                       (count_pattern_wrapping(x, "010") == 0 &&
                                        count_pattern_wrapping(x, "111") == 0);
            if (singleton_self != characterized) frozen.fail(detail::show(x));
        }
    }
    return {nonempty, frozen};
}

inline LawVerdict verify_periodicity_criterion(int Lmax) {
    LawVerdict law{"periodicity-criterion"};
    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Slice& slice : detail::all_slices(L))
            for (const Component& comp : decompose(slice, Mode::raw)) {
                if (!comp.recurrent) continue;
                ++law.cases;
                bool all_isolated = true;
                for (const Ring& m : comp.members)
                    if (count_pattern_wrapping(m, "010") == 0 || count_pattern_wrapping(m, "11") != 0)
                        all_isolated = false;
                if ((comp.period >= 2) != all_isolated)
                    law.fail(detail::show(comp.members.front()) + " period=" + std::to_string(comp.period));
                if (classify_period(comp) != comp.period)
                    law.fail("classify_period mismatch at " + detail::show(comp.members.front()));
            }
    return law;
}

inline LawVerdict verify_single_exponent(int Lmax) {
    LawVerdict law{"single-exponent-transitions"};
    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Ring& x : detail::all_rings(L)) {
            const TransitionRecord rec = successors(x);
            ++law.cases;
            std::map<Ring, int> ell_of;
            for (const auto& e : rec.edges) {
                const auto [it, inserted] = ell_of.emplace(e.target, e.ell);
                if (!inserted && it->second != e.ell)
                    law.fail(detail::show(x) + " -> " + detail::show(e.target) + " carries l=" +
                             std::to_string(it->second) + " and l=" + std::to_string(e.ell));
            }
            // row sums are exactly 1 at a generic interior alpha
            static const NoiseParam probe{Rational(3, 7)};
            if (rec.row_sum(probe) != 1) law.fail("row sum != 1 at " + detail::show(x));
        }
    return law;
}

inline LawVerdict verify_shift_equivariance(int Lmax) {
    LawVerdict law{"shift-equivariance"};
    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Slice& slice : detail::all_slices(L)) {
            const auto raw = decompose(slice, Mode::raw);
            const auto quot = decompose(slice, Mode::shift_quotient);
            ++law.cases;
            // every raw component projects into exactly one quotient component
            std::map<Ring, std::size_t> quot_of;  // class rep -> quotient component index
            for (std::size_t qi = 0; qi < quot.size(); ++qi)
                for (const Ring& rep : quot[qi].members) quot_of[rep] = qi;
            std::vector<long> raw_mass(quot.size(), 0);
            bool ok = true;
            for (const Component& rc : raw) {
                std::set<std::size_t> hits;
                for (const Ring& m : rc.members) hits.insert(quot_of.at(m.canonical_rotation()));
                if (hits.size() != 1) ok = false;
                else raw_mass[*hits.begin()] += long(rc.members.size());
                if (!ok) break;
            }
            if (ok)
                for (std::size_t qi = 0; qi < quot.size(); ++qi) {
                    long orbit_total = 0;
                    for (int s : quot[qi].orbit_sizes) orbit_total += s;
                    if (raw_mass[qi] != orbit_total) ok = false;
                }
            if (!ok) law.fail("slice (" + std::to_string(L) + ", " + std::to_string(slice.n1) + ", " +
                              std::to_string(slice.n110) + ")");
        }
    return law;
}

// --------------------------------------------- combinatorial laws (k1,k2) --

inline std::vector<LawVerdict> verify_partition_laws(int Lmax) {
    LawVerdict factorization{"partition-factorization"};
    LawVerdict fibers{"skeleton-fibers"};
    LawVerdict shell{"dominant-shell-size"};
    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Slice& slice : detail::all_slices(L)) {
            if (!factorization_assumptions_hold(L, slice.n1, slice.n110)) continue;
            const auto comps = decompose(slice, Mode::raw);
            std::map<std::string, std::size_t> orbit_to_comp;
            for (std::size_t ci = 0; ci < comps.size(); ++ci) {
                const Component& comp = comps[ci];
                if (!comp.recurrent) {
                    fibers.fail("transient component in slice under the factorization assumptions");
                    continue;
                }
                ++factorization.cases;
                const Rational c_omega = component_constant(comp);
                const PartitionTable table = partition_function_brute(comp);
                int max_sum = 0;
                for (const auto& [key, count] : table.entries)
                    max_sum = std::max(max_sum, key.first + key.second);
                for (int k1 = 0; k1 <= slice.n110 + 1; ++k1)
                    for (int k2 = 0; k2 <= L - slice.n1 - slice.n110 + 1; ++k2) {
                        const Rational expected =
                            c_omega * Rational(universal_factor(L, slice.n1, slice.n110, k1, k2));
                        if (Rational(table.at(k1, k2)) != expected)
                            factorization.fail("(" + std::to_string(L) + "," + std::to_string(slice.n1) +
                                               "," + std::to_string(slice.n110) + ") k=(" +
                                               std::to_string(k1) + "," + std::to_string(k2) + ")");
                    }
                ++shell.cases;
                if (max_sum != std::min(L - slice.n1, slice.n1 - 2 * slice.n110))
                    shell.fail("component at " + detail::show(comp.members.front()));
                ++fibers.cases;
                std::set<std::string> orbits;
                for (const Ring& m : comp.members) orbits.insert(canonical_orbit_word(skeleton(m)));
                if (orbits.size() != 1) {
                    fibers.fail("mixed skeleton orbits inside " + detail::show(comp.members.front()));
                    continue;
                }
                const auto [it, inserted] = orbit_to_comp.emplace(*orbits.begin(), ci);
                if (!inserted) fibers.fail("skeleton orbit split across components: " + *orbits.begin());
            }
        }
    return {factorization, fibers, shell};
}

// ------------------------------------------------------- stationary laws --

inline LawVerdict verify_closed_form_stationarity(int Lmax, const std::vector<NoiseParam>& alphas) {
    LawVerdict law{"closed-form-stationarity"};
    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Slice& slice : detail::all_slices(L))
            for (const Component& comp : decompose(slice, Mode::raw)) {
                if (!comp.recurrent) continue;
                for (const NoiseParam& alpha : alphas) {
                    ++law.cases;
                    const StationarityReport report = verify_stationarity(comp, alpha);
                    if (!report.ok)
                        law.fail("component at " + detail::show(comp.members.front()) + " alpha=" +
                                 rational_string(alpha.alpha) +
                                 (report.vectors_equal ? " nonzero residual" : " route mismatch"));
                }
            }
    return law;
}

inline LawVerdict verify_flux_independence(int Lmax, const NoiseParam& alpha) {
    LawVerdict law{"flux-component-independence"};
    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Slice& slice : detail::all_slices(L)) {
            if (!factorization_assumptions_hold(L, slice.n1, slice.n110)) continue;
            const Rational expected = mean_flux_exact({L, slice.n1, slice.n110, alpha}).Q;
            for (const Component& comp : decompose(slice, Mode::shift_quotient)) {
                if (!comp.recurrent) continue;
                ++law.cases;
                const FluxResult f = mean_flux_component(comp, alpha);
                if (f.Q != expected || f.Qu != Rational(slice.n1, L) - expected)
                    law.fail("component at " + detail::show(comp.members.front()));
            }
        }
    return law;
}

// ------------------------------------------------- predecessor-set laws --

inline std::vector<LawVerdict> verify_predecessor_laws(int Lmax,
                                                       const std::vector<NoiseParam>& alphas) {
    LawVerdict against_brute{"predecessor-construction-vs-brute"};
    LawVerdict cardinality{"predecessor-cardinality"};
    LawVerdict choice_patterns{"choice-count-patterns"};
    LawVerdict census_law{"predecessor-census-binomials"};
    LawVerdict balance{"balance-identity"};
    LawVerdict backmap{"backmap-uniqueness"};
    LawVerdict outside_fixed{"outside-segments-fixed"};

    for (int L = min_ring_length; L <= Lmax; ++L)
        for (const Slice& slice : detail::all_slices(L)) {
            // reverse edges once per slice: target -> (source -> l values)
            std::map<Ring, std::map<Ring, std::set<int>>> reverse;
            for (const Ring& s : slice.members)
                for (const auto& e : successors(s).edges) reverse[e.target][s].insert(e.ell);

            for (const Component& comp : decompose(slice, Mode::raw)) {
                if (!comp.recurrent) continue;
                for (const Ring& x : comp.members) {
                    const auto witnesses = predecessor_enumerate(x);
                    const auto& brute = reverse[x];

                    ++against_brute.cases;
                    bool sets_equal = witnesses.size() == brute.size();
                    for (const auto& w : witnesses) {
                        const auto it = brute.find(w.pred);
                        if (it == brute.end()) {
                            sets_equal = false;
                            break;
                        }
                        if (it->second.size() != 1 || *it->second.begin() != w.ell) {
                            against_brute.fail("l mismatch at " + detail::show(x) + " pred " +
                                               detail::show(w.pred));
                        }
                    }
                    if (!sets_equal) against_brute.fail(detail::show(x));

                    const BracketDecomposition dec = bracket_decompose(x);
                    ++cardinality.cases;
                    if (witnesses.size() != (std::size_t(1) << dec.choice_count()))
                        cardinality.fail(detail::show(x));

                    ++choice_patterns.cases;
                    if (dec.dbracket_choices != count_pattern_wrapping(x, "110111") ||
                        dec.brace_choices + dec.angle_choices !=
                            count_pattern_wrapping(x, "00111") + count_pattern_wrapping(x, "010111"))
                        choice_patterns.fail(detail::show(x));

                    ++census_law.cases;
                    const auto census = lemma_census(x);
                    const long n_dbl = count_pattern_wrapping(x, "110111");
                    const long n_ang = count_pattern_wrapping(x, "00111") +
                                       count_pattern_wrapping(x, "010111");
                    long reconstructed = 0;
                    for (const auto& [key, count] : census) {
                        if (Int(count) != binomial(n_dbl, key.first) * binomial(n_ang, key.second))
                            census_law.fail(detail::show(x) + " at (l1,l2)=(" +
                                            std::to_string(key.first) + "," +
                                            std::to_string(key.second) + ")");
                        reconstructed += count;
                    }
                    if (reconstructed != long(witnesses.size())) census_law.fail(detail::show(x));

                    for (const NoiseParam& alpha : alphas) {
                        ++balance.cases;
                        const BalanceReport rep = verify_balance_identity(x, alpha);
                        if (!rep.equal || !rep.telescoping_ok)
                            balance.fail(detail::show(x) + " alpha=" + rational_string(alpha.alpha) +
                                         " lhs=" + rational_string(rep.lhs) +
                                         " rhs=" + rational_string(rep.rhs) + " over " +
                                         std::to_string(witnesses.size()) + " predecessors");
                    }

                    // back-map uniqueness around every 1101 / isolated-move window
                    ++backmap.cases;
                    for (int j : occurrence_starts(x, "1101")) {
                        bool saw_fire = false, saw_keep = false;
                        for (const auto& w : witnesses) {
                            const bool fired = w.pred.bit(j + 2) && !w.pred.bit(j + 3);
                            (fired ? saw_fire : saw_keep) = true;
                        }
                        const bool r1 = x.bit(j + 4), r2 = x.bit(j + 5);
                        bool ok = true;
                        if (r1 && !r2) ok = !saw_fire;         // settled pair of units: unchanged
                        else if (r1 && r2) ok = saw_fire && saw_keep;  // choice group
                        else ok = !saw_keep;                   // forced restore
                        if (!ok) backmap.fail(detail::show(x) + " window j=" + std::to_string(j));
                    }
                    const auto isolated_windows = [&](std::string_view pat, int off) {
                        for (int j : occurrence_starts(x, pat)) {
                            const int p = j + off;  // pair sites (p, p+1) read 01 in x
                            if (pat == "101" && x.bit(j - 1)) continue;  // the 1101 window owns this pair
                            bool saw_moved = false, saw_kept = false;
                            for (const auto& w : witnesses) {
                                const bool moved = w.pred.bit(p) && !w.pred.bit(p + 1);
                                (moved ? saw_moved : saw_kept) = true;
                            }
                            const bool r1 = x.bit(p + 2), r2 = x.bit(p + 3);
                            bool ok = true;
                            if (r1 && !r2) ok = !saw_moved;
                            else if (r1 && r2) ok = saw_moved && saw_kept;
                            else ok = !saw_kept;
                            if (!ok) backmap.fail(detail::show(x) + " pair at " + std::to_string(p));
                        }
                    };
                    isolated_windows("001", 1);
                    isolated_windows("101", 1);

                    ++outside_fixed.cases;
                    for (const Segment& seg : dec.segments) {
                        if (seg.kind != SegmentKind::outside) continue;
                        for (const auto& w : witnesses)
                            for (int d = 0; d < seg.length; ++d)
                                if (w.pred.bit(seg.start + d) != x.bit(seg.start + d))
                                    outside_fixed.fail(detail::show(x) + " site " +
                                                       std::to_string((seg.start + d) % L));
                    }
                }
            }
        }
    return {against_brute, cardinality, choice_patterns, census_law, balance, outside_fixed, backmap};
}

// ----------------------------------------------------------------- driver --

struct VerifyOptions {
    int Lmax_exhaustive = 8;   // conservation + one-step implications
    int Lmax_structure = 9;    // predecessor characterization, periods, single exponent
    int Lmax_theorem = 11;     // stationarity, factorization, flux independence
    int Lmax_predecessor = 10; // predecessor-set laws
    std::vector<NoiseParam> alphas = {NoiseParam{Rational(1, 4)}, NoiseParam{Rational(1, 2)},
                                      NoiseParam{Rational(3, 4)}};
};

inline std::vector<LawVerdict> run_verification(const VerifyOptions& options = {}) {
    std::vector<LawVerdict> verdicts;
    const auto absorb = [&](std::vector<LawVerdict> v) {
        for (auto& law : v) verdicts.push_back(std::move(law));
    };
    absorb(verify_flux_tables());
    absorb(verify_one_step_laws(options.Lmax_exhaustive));
    absorb(verify_predecessor_characterization(options.Lmax_structure));
    verdicts.push_back(verify_periodicity_criterion(options.Lmax_structure));
    verdicts.push_back(verify_single_exponent(options.Lmax_structure));
    verdicts.push_back(verify_shift_equivariance(std::min(options.Lmax_structure, 9)));
    absorb(verify_partition_laws(options.Lmax_theorem));
    verdicts.push_back(verify_closed_form_stationarity(options.Lmax_theorem, options.alphas));
    verdicts.push_back(verify_flux_independence(options.Lmax_theorem,
                                                options.alphas.empty() ? NoiseParam{Rational(1, 2)}
                                                                       : options.alphas[options.alphas.size() / 2]));
    absorb(verify_predecessor_laws(options.Lmax_predecessor, options.alphas));
    return verdicts;
}

inline bool all_pass(const std::vector<LawVerdict>& verdicts) {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

}  // namespace sca5
