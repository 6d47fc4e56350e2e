#pragma once

// Stationary distributions on recurrent components, computed two independent
// ways and compared exactly:
//
//   * stationary_numeric      — exact rational solve of the fixed-point
//                               system (one redundant stationarity row is
//                               replaced by the normalization sum p = 1);
//   * stationary_closed_form  — weight(x) proportional to
//                               alpha^#010(x) / (1-alpha)^(#1110(x)+#010(x)),
//                               normalized through the partition table.
//
// Quotient-mode components carry rotation-class multiplicities, so the
// closed-form class weight is the raw weight times the orbit size.

#include "sca5/components.hpp"
#include "sca5/linsolve.hpp"
#include "sca5/partition.hpp"
#include "sca5/rational.hpp"
#include "sca5/transitions.hpp"

#include <stdexcept>
#include <vector>

namespace sca5 {

struct StationaryVector {
    std::vector<Rational> weights;  // aligned with component.members; sums to 1 exactly
};

namespace detail {

// probabilities[i] = list of (target index, exact probability) out of member i.
inline std::vector<std::vector<std::pair<int, Rational>>> transition_probabilities(
    const Component& component, const NoiseParam& noise) {
    std::vector<std::vector<std::pair<int, Rational>>> out(component.size());
    for (std::size_t i = 0; i < component.size(); ++i) {
        const TransitionRecord rec = successors(component.members[i]);
        for (const auto& e : rec.edges) {
            const Rational p = Rational(e.multiplicity) * pow_rational(noise.alpha, e.ell) *
                               pow_rational(Rational(1) - noise.alpha, rec.k - e.ell);
            if (p == 0) continue;
            const Ring t =
                (component.mode == Mode::raw) ? e.target : e.target.canonical_rotation();
            const int j = component.index_of(t);
            if (j < 0)
                throw std::invalid_argument(
                    "stationary: component is not closed under the dynamics at this alpha");
            out[i].emplace_back(j, p);
        }
    }
    return out;
}

}  // namespace detail

inline StationaryVector stationary_numeric(const Component& component, const NoiseParam& noise) {
    if (!component.recurrent)
        throw std::invalid_argument("stationary_numeric: component must be recurrent");
    const std::size_t n = component.size();
    const auto prob = detail::transition_probabilities(component, noise);

    // Row t < n-1: sum_i f(i, t) p_i - p_t = 0; row n-1: sum_i p_i = 1.
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [t, p] : prob[i])
            if (std::size_t(t) + 1 < n) A[std::size_t(t)][i] += p;
    for (std::size_t t = 0; t + 1 < n; ++t) A[t][t] -= 1;
    for (std::size_t i = 0; i < n; ++i) A[n - 1][i] = 1;
    b[n - 1] = 1;

    StationaryVector sv;
    try {
        sv.weights = solve_linear_exact(A, b);
    } catch (const singular_system&) {
        throw std::logic_error(
            "stationary_numeric: fixed-point system is singular beyond the expected rank "
            "deficiency; transition structure is inconsistent");
    }
    return sv;
}

// Unnormalized closed-form weight of one configuration.
inline Rational closed_form_weight(const Ring& x, const NoiseParam& noise) {
    const int k1 = count_pattern_wrapping(x, "1110");
    const int k2 = count_pattern_wrapping(x, "010");
    return pow_rational(noise.alpha, k2) * pow_rational(Rational(1) - noise.alpha, -(k1 + k2));
}

inline StationaryVector stationary_closed_form(const Component& component, const NoiseParam& noise) {
    if (!noise.interior())
        throw std::invalid_argument("stationary_closed_form: alpha must lie strictly in (0, 1)");
    if (!component.recurrent)
        throw std::invalid_argument("stationary_closed_form: component must be recurrent");

    const PartitionTable table = partition_function_brute(component);
    Rational z = 0;
    for (const auto& [key, count] : table.entries)
        z += pow_rational(noise.alpha, key.second) *
             pow_rational(Rational(1) - noise.alpha, -(key.first + key.second)) * Rational(count);

    StationaryVector sv;
    sv.weights.reserve(component.size());
    for (std::size_t i = 0; i < component.size(); ++i)
        sv.weights.push_back(Rational(component.orbit_sizes[i]) *
                             closed_form_weight(component.members[i], noise) / z);
    return sv;
}

// Largest |(Ap)(x) - p(x)| over the component; zero iff p is a fixed point.
inline Rational stationarity_residual(const Component& component, const NoiseParam& noise,
                                      const std::vector<Rational>& p) {
    if (p.size() != component.size())
        throw std::invalid_argument("stationarity_residual: weight vector shape mismatch");
    const auto prob = detail::transition_probabilities(component, noise);
    std::vector<Rational> image(component.size(), Rational(0));
    for (std::size_t i = 0; i < component.size(); ++i)
        for (const auto& [t, f] : prob[i]) image[std::size_t(t)] += f * p[i];
    Rational worst = 0;
    for (std::size_t t = 0; t < component.size(); ++t) {
        Rational r = image[t] - p[t];
        if (r < 0) r = -r;
        if (r > worst) worst = r;
    }
    return worst;
}

struct StationarityReport {
    bool ok = false;           // vectors agree entry-wise and both are exact fixed points
    bool vectors_equal = false;
    Rational residual_numeric;
    Rational residual_closed_form;
};

inline StationarityReport verify_stationarity(const Component& component, const NoiseParam& noise) {
    const StationaryVector numeric = stationary_numeric(component, noise);
    const StationaryVector closed = stationary_closed_form(component, noise);
    StationarityReport report;
    report.vectors_equal = numeric.weights == closed.weights;
    report.residual_numeric = stationarity_residual(component, noise, numeric.weights);
    report.residual_closed_form = stationarity_residual(component, noise, closed.weights);
    report.ok = report.vectors_equal && report.residual_numeric == 0 && report.residual_closed_form == 0;
    return report;
}

}  // namespace sca5
