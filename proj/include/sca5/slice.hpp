#pragma once

// Enumeration of a conserved-quantity slice {x : #1(x) = n1, #110(x) = n110}
// in canonical (ascending string) order.  The scan walks only the C(L, n1)
// words of the right particle count and is refused above a configurable
// budget, pointing users at the Monte Carlo path instead.

#include "sca5/rational.hpp"
#include "sca5/ring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sca5 {

inline constexpr std::uint64_t default_state_budget = std::uint64_t{1} << 24;

struct Slice {
    int L = 0, n1 = 0, n110 = 0;
    std::vector<Ring> members;  // ascending; complete and duplicate-free

    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }
};

// Necessary domain bound on the two conserved densities.
inline bool density_bound_holds(int L, int n1, int n110) {
    return 2 * n110 <= n1 && n1 <= L - n110;
}

inline Slice enumerate_slice(int L, int n1, int n110, std::uint64_t budget = default_state_budget) {
    if (L < min_ring_length || L > Ring::max_length)
        throw std::invalid_argument("slice: L must be in [" + std::to_string(min_ring_length) + ", " +
                                    std::to_string(Ring::max_length) + "]");
    Slice slice{L, n1, n110, {}};
    if (n1 < 0 || n1 > L || n110 < 0) return slice;  // infeasible -> empty

    if (n1 == 0 || n1 == L) {
        if (n110 == 0) slice.members.push_back(n1 == 0 ? Ring::zeros(L) : Ring::ones(L));
        return slice;
    }

    const Int candidates = binomial(L, n1);
    if (candidates > Int(budget))
        throw budget_exceeded("slice (" + std::to_string(L) + ", " + std::to_string(n1) + ", " +
                              std::to_string(n110) + "): " + candidates.str() +
                              " candidate states exceed the budget of " + std::to_string(budget) +
                              "; raise the budget or use the Monte Carlo flux estimator");

    // Walk all L-bit words of popcount n1 in ascending order (Gosper).
    const std::uint64_t first = (n1 == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n1) - 1;
    const std::uint64_t last = first << (L - n1);
    std::uint64_t v = first;
    for (;;) {
        const Ring x = Ring::from_value(L, v);
        if (count_pattern_wrapping(x, "110") == n110) slice.members.push_back(x);
        if (v == last) break;
        const std::uint64_t u = v & (~v + 1);
        const std::uint64_t w = v + u;
        v = w | (((v ^ w) >> 2) / u);
    }
    return slice;
}

}  // namespace sca5
