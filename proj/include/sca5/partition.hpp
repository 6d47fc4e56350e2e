#pragma once

// Partition tables N(k1, k2) = number of component members with #1110 = k1
// and #010 = k2, plus the universal combinatorial factor that determines the
// (k1, k2)-dependence independently of the component:
//
//   N_component(k1, k2) = C * universal_factor(L, n1, n110, k1, k2),
//   C = L * |skeleton orbit| / (L - n1),
//
// valid when n1 < L, n110 >= 1 and n1 - 2*n110 >= 1.

#include "sca5/components.hpp"
#include "sca5/rational.hpp"
#include "sca5/ring.hpp"
#include "sca5/skeleton.hpp"

#include <map>
#include <utility>

namespace sca5 {

// Three-case closed form; binomials vanish outside their natural range.
inline Int universal_factor(int L, int n1, int n110, int k1, int k2) {
    if (k1 < 0 || k2 < 0) return 0;
    const int minus_sites = L - n1 - n110;
    const int free_after_minus = n1 - 2 * n110 - k2;  // R(k2)
    if (k1 >= 1 && k1 <= free_after_minus)
        return binomial(minus_sites, k2) * binomial(n110, k1) * binomial(free_after_minus - 1, k1 - 1);
    if (k1 == 0 && free_after_minus == 0) return binomial(minus_sites, k2);
    return 0;
}

struct PartitionTable {
    int L = 0, n1 = 0, n110 = 0;
    std::map<std::pair<int, int>, Int> entries;  // zero counts omitted

    Int at(int k1, int k2) const {
        const auto it = entries.find({k1, k2});
        return it == entries.end() ? Int(0) : it->second;
    }

    Int total() const {
        Int t = 0;
        for (const auto& [key, count] : entries) t += count;
        return t;
    }
};

// Raw-mode census of (#1110, #010) over the members.  Quotient components
// count each class with its orbit size, so the table always equals the raw one.
inline PartitionTable partition_function_brute(const Component& component) {
    PartitionTable table{component.L, component.n1, component.n110, {}};
    for (std::size_t i = 0; i < component.members.size(); ++i) {
        const Ring& x = component.members[i];
        const int k1 = count_pattern_wrapping(x, "1110");
        const int k2 = count_pattern_wrapping(x, "010");
        table.entries[{k1, k2}] += component.orbit_sizes[i];
    }
    return table;
}

inline bool factorization_assumptions_hold(int L, int n1, int n110) {
    return L - n1 >= 1 && n110 >= 1 && n1 - 2 * n110 >= 1;
}

// C = L * |orbit| / (L - n1); exact rational (not an integer in general).
inline Rational component_constant(const Component& component) {
    if (!factorization_assumptions_hold(component.L, component.n1, component.n110))
        throw unsupported_precondition(
            "component_constant: universal factorization not applicable (needs n1 < L, n110 >= 1, "
            "n1 - 2*n110 >= 1)");
    const int orb = orbit_size(skeleton(component.members.front()));
    return Rational(Int(component.L) * orb, Int(component.L - component.n1));
}

}  // namespace sca5
