#pragma once

// The three local flux tables and the single-step update kernels.
//
// u-system:  u_j' = u_j + q1(u_{j-2},u_{j-1},u_j,u_{j+1}) - q1(u_{j-1},u_j,u_{j+1},u_{j+2})
// v-system:  v_j' = v_j + q(v_{j-3},v_{j-2},v_{j-1},v_j)  - q(v_{j-2},v_{j-1},v_j,v_{j+1})
//
// q1 carries one random bit a per 0111 window (a=0 recovers the deterministic
// table q0), q carries one random bit b per 1110 window; the two systems are
// conjugate under v_j^n = u_{n-j}^n with the pairing b = 1 - a.  Noise is one
// independent Bernoulli(alpha) draw per occurrence per step, in ascending
// start order.

#include "sca5/rational.hpp"
#include "sca5/ring.hpp"
#include "sca5/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace sca5 {

// Deterministic flux: 1 for 11**, 1 for 0110, else 0.
constexpr int q0_flux(int w, int x, int y, int z) {
    return (w & x) | (~w & x & y & ~z & 1);
}

// Stochastic u-flux: q0 with the 0111 entry replaced by a.
constexpr int q1_flux(int w, int x, int y, int z, int a) {
    return q0_flux(w, x, y, z) | (a & ~w & x & y & z & 1);
}

// Stochastic v-flux: 1 for x y z = 010, b for 1110, else 0.
constexpr int q_flux(int w, int x, int y, int z, int b) {
    return (~x & y & ~z & 1) | (b & w & x & y & ~z & 1);
}

inline constexpr std::string_view firing_pattern_v = "1110";  // rightmost particle may hop
inline constexpr std::string_view firing_pattern_u = "0111";  // conjugate window in the u-system

// The subset of 1110 occurrence starts whose rightmost particle moves this step.
struct FiringMask {
    std::vector<int> starts;
};

namespace detail {

template <std::size_t W>
BasicRing<W> sites_ring(int length, const std::vector<int>& sites) {
    auto r = BasicRing<W>::zeros(length);
    for (int s : sites) r.set(s, true);
    return r;
}

// Validates that `starts` addresses occurrences of `pattern` in x.
template <std::size_t W>
BasicRing<W> validated_start_bits(const BasicRing<W>& x, const std::vector<int>& starts,
                                  std::string_view pattern) {
    const BasicRing<W> occ = occurrence_mask(x, pattern);
    auto bits = BasicRing<W>::zeros(x.length());
    for (int s : starts) {
        if (!occ.bit(s))
            throw std::invalid_argument("firing mask: site " + std::to_string(s) + " is not a " +
                                        std::string(pattern) + " occurrence");
        bits.set(s, true);
    }
    return bits;
}

}  // namespace detail

template <std::size_t W>
struct VStepResult {
    BasicRing<W> next;
    int fired;  // realized 1110 -> 1101 transitions
    int moved;  // deterministic 010 moves
};

// One v-step with an explicit set of fired 1110 occurrences (bit s set in
// fire_bits means the occurrence starting at s fires).  fire_bits must be a
// subset of the 1110 occurrence mask.
template <std::size_t W>
VStepResult<W> step_v_with_fire_bits(const BasicRing<W>& v, const BasicRing<W>& fire_bits) {
    const BasicRing<W> moves = occurrence_mask(v, "010");
    // out.bit(j) == 1 iff the particle at site j leaves it this step.
    BasicRing<W> out = moves.rotated(-1);
    out |= fire_bits.rotated(-2);
    BasicRing<W> next = v;
    next ^= out;
    next ^= out.rotated(-1);
    return {next, fire_bits.popcount(), moves.popcount()};
}

template <std::size_t W>
BasicRing<W> step_stochastic_v(const BasicRing<W>& v, const FiringMask& mask) {
    return step_v_with_fire_bits(v, detail::validated_start_bits(v, mask.starts, firing_pattern_v)).next;
}

template <std::size_t W>
VStepResult<W> step_sampled_v(const BasicRing<W>& v, const NoiseParam& noise, Rng& rng) {
    auto fire = BasicRing<W>::zeros(v.length());
    for (int s : occurrence_starts(v, firing_pattern_v))
        if (bernoulli(rng, noise)) fire.set(s, true);
    return step_v_with_fire_bits(v, fire);
}

// One u-step with an explicit set of 0111 occurrences taking a = 1.
template <std::size_t W>
BasicRing<W> step_u_with_a_bits(const BasicRing<W>& u, const BasicRing<W>& a_bits) {
    // g.bit(j) = q1(u_{j-2}, u_{j-1}, u_j, u_{j+1}; a).
    BasicRing<W> g = occurrence_mask(u, "11").rotated(-2);
    g |= occurrence_mask(u, "0110").rotated(-2);
    g |= a_bits.rotated(-2);
    BasicRing<W> next = u;
    next ^= g;
    next ^= g.rotated(1);
    return next;
}

template <std::size_t W>
BasicRing<W> step_deterministic_u(const BasicRing<W>& u) {
    return step_u_with_a_bits(u, BasicRing<W>::zeros(u.length()));
}

template <std::size_t W>
BasicRing<W> step_stochastic_u(const BasicRing<W>& u, const std::vector<int>& a_one_starts) {
    return step_u_with_a_bits(u, detail::validated_start_bits(u, a_one_starts, firing_pattern_u));
}

// Draws b ~ Bernoulli(alpha) per 0111 occurrence and applies a = 1 - b,
// mirroring the conjugate v-system convention.
template <std::size_t W>
BasicRing<W> step_sampled_u(const BasicRing<W>& u, const NoiseParam& noise, Rng& rng) {
    auto a_bits = BasicRing<W>::zeros(u.length());
    for (int s : occurrence_starts(u, firing_pattern_u))
        if (!bernoulli(rng, noise)) a_bits.set(s, true);
    return step_u_with_a_bits(u, a_bits);
}

// Row n of a u-trajectory viewed in v-coordinates: v_j = u_{(n-j) mod L}.
// The map is an involution, so it also converts a v-row back to the u-row.
template <std::size_t W>
BasicRing<W> transform_u_to_v(const BasicRing<W>& u, long n) {
    auto v = BasicRing<W>::zeros(u.length());
    const int L = u.length();
    const int n_mod = int(((n % L) + L) % L);
    for (int j = 0; j < L; ++j) v.set(j, u.bit(n_mod - j));
    return v;
}

}  // namespace sca5
