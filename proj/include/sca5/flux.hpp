#pragma once

// Mean flux of the v-system and the fundamental diagram of the u-system.
//
// Three routes to Q:
//   * exact-universal  — closed form over the universal factor, independent
//                        of any component (valid under the factorization
//                        assumptions);
//   * exact-component  — (1/L) sum (alpha*#1110 + #010) p(x) against the
//                        stationary vector of one recurrent component;
//   * monte-carlo      — seeded time average of the realized per-step flux
//                        with a batch-means standard error.
//
// Q_u = rho1 - Q converts to the original orientation, and
// lim_{alpha -> 1} Q_u = max(2*rho1 - 1, 2*rho110) is recovered both by the
// dominant-shell extraction and numerically near the boundary.

#include "sca5/components.hpp"
#include "sca5/partition.hpp"
#include "sca5/rational.hpp"
#include "sca5/ring.hpp"
#include "sca5/rng.hpp"
#include "sca5/rules.hpp"
#include "sca5/slice.hpp"
#include "sca5/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sca5 {

enum class FluxMethod { exact_universal, exact_component, monte_carlo };

inline const char* to_string(FluxMethod m) {
    switch (m) {
        case FluxMethod::exact_universal: return "exact-universal";
        case FluxMethod::exact_component: return "exact-component";
        default: return "monte-carlo";
    }
}

struct FluxQuery {
    int L = 0, n1 = 0, n110 = 0;
    NoiseParam alpha;
};

struct FluxResult {
    Rational Q;   // v-system mean flux per site per step
    Rational Qu;  // u-system mean flux, rho1 - Q
    FluxMethod method = FluxMethod::exact_universal;
    std::optional<double> stderr_estimate;  // batch-means, Monte Carlo only
};

// The factorization needs n1 - 2*n110 >= 1, but the flux formula extends to
// the frozen boundary n1 = 2*n110, where only the (k1, k2) = (0, 0) term
// survives and Q = 0 like every frozen component.
inline bool universal_assumptions_hold(const FluxQuery& q) {
    return q.alpha.interior() && q.L - q.n1 >= 1 && q.n110 >= 1 && q.n1 - 2 * q.n110 >= 0;
}

// Closed-form mean flux over the universal factor.
inline FluxResult mean_flux_exact(const FluxQuery& q) {
    if (!universal_assumptions_hold(q))
        throw unsupported_precondition(
            "mean_flux_exact: needs 0 < alpha < 1, n1 < L, n110 >= 1 and n1 >= 2*n110; use the "
            "component route or Monte Carlo outside these assumptions");
    const Rational one_minus = Rational(1) - q.alpha.alpha;
    Rational num = 0, den = 0;
    const int k2_max = q.L - q.n1 - q.n110;
    for (int k1 = 0; k1 <= q.n110; ++k1)
        for (int k2 = 0; k2 <= k2_max; ++k2) {
            const Int n = universal_factor(q.L, q.n1, q.n110, k1, k2);
            if (n == 0) continue;
            const Rational w =
                pow_rational(q.alpha.alpha, k2) * pow_rational(one_minus, -(k1 + k2)) * Rational(n);
            den += w;
            num += (q.alpha.alpha * k1 + k2) * w;
        }
    if (den == 0)
        throw unsupported_precondition("mean_flux_exact: empty configuration family");
    FluxResult r{num / den / q.L, 0, FluxMethod::exact_universal, {}};
    r.Qu = Rational(q.n1, q.L) - r.Q;
    return r;
}

// Stationary expectation of the flux observable on one recurrent component.
inline FluxResult mean_flux_component(const Component& component, const NoiseParam& noise) {
    const StationaryVector p = noise.interior() ? stationary_closed_form(component, noise)
                                                : stationary_numeric(component, noise);
    Rational q = 0;
    for (std::size_t i = 0; i < component.size(); ++i) {
        const Ring& x = component.members[i];
        q += (noise.alpha * count_pattern_wrapping(x, "1110") + count_pattern_wrapping(x, "010")) *
             p.weights[i];
    }
    q /= component.L;
    FluxResult r{q, Rational(component.n1, component.L) - q, FluxMethod::exact_component, {}};
    return r;
}

struct McParams {
    long steps = 3000;
    long burn_in = 0;
    std::uint64_t seed = 0;
    int batches = 15;  // batch length steps/15; long batches keep the error honest under autocorrelation
};

// Time average of the realized per-step flux (fired 1110 hops plus 010
// moves, divided by L).  The estimate itself is an exact rational; the
// standard error comes from batch means.
template <std::size_t W>
FluxResult mean_flux_monte_carlo(const BasicRing<W>& v0, const NoiseParam& noise,
                                 const McParams& params) {
    if (params.steps <= params.burn_in || params.burn_in < 0)
        throw std::invalid_argument("mean_flux_monte_carlo: need steps > burn_in >= 0");
    Rng rng(params.seed);
    BasicRing<W> x = v0;
    const int L = v0.length();
    const long measured = params.steps - params.burn_in;
    std::vector<long> flux_counts;
    flux_counts.reserve(std::size_t(measured));
    long long total = 0;
    for (long n = 0; n < params.steps; ++n) {
        const VStepResult<W> step = step_sampled_v(x, noise, rng);
        if (n >= params.burn_in) {
            flux_counts.push_back(step.fired + step.moved);
            total += step.fired + step.moved;
        }
        x = step.next;
    }

    const int batches = int(std::min<long>(params.batches, measured));
    const long per_batch = measured / batches;
    const double grand_mean = double(total) / (double(measured) * L);
    double var = 0;
    for (int b = 0; b < batches; ++b) {
        long long s = 0;
        for (long i = b * per_batch; i < (b + 1) * per_batch; ++i)
            s += flux_counts[std::size_t(i)];
        const double mean_b = double(s) / (double(per_batch) * L);
        var += (mean_b - grand_mean) * (mean_b - grand_mean);
    }
    const double se = batches > 1 ? std::sqrt(var / (batches - 1) / batches) : 0.0;

    FluxResult r{Rational(Int(total), Int(measured) * L), 0, FluxMethod::monte_carlo, se};
    r.Qu = Rational(v0.popcount(), L) - r.Q;
    return r;
}

// Deterministic-system mean flux as a function of the conserved densities.
inline Rational zero_noise_limit(const Rational& rho1, const Rational& rho110) {
    if (rho110 < 0 || 2 * rho110 > rho1 || rho1 > 1 - rho110)
        throw std::invalid_argument("zero_noise_limit: densities must satisfy 2*rho110 <= rho1 <= 1 - rho110");
    return std::max(Rational(2 * rho1 - 1), Rational(2 * rho110));
}

// Exact alpha -> 1 limit of Q_u by keeping only the dominant k1 + k2 shell.
inline Rational limit_flux_alpha_to_one(int L, int n1, int n110) {
    if (n1 < 0 || n1 > L || n110 < 0 || !density_bound_holds(L, n1, n110))
        throw std::invalid_argument("limit_flux_alpha_to_one: infeasible conserved quantities");
    if (n1 == L) return 1;                        // full ring is frozen: Q = 0, Qu = rho1
    if (n1 == 0) return 0;
    if (n110 == 0) return 0;                      // isolated particles: Q = rho1 exactly
    if (n1 == 2 * n110) return Rational(n1, L);   // frozen blocks: Q = 0 exactly
    const int shell = std::min(L - n1, n1 - 2 * n110);
    Int shell_count = 0;
    for (int k1 = 0; k1 <= shell; ++k1)
        shell_count += universal_factor(L, n1, n110, k1, shell - k1);
    if (shell_count == 0)
        throw std::logic_error("limit_flux_alpha_to_one: dominant shell is empty");
    // Every surviving term carries alpha*k1 + k2 -> k1 + k2 = shell.
    return Rational(n1 - shell, L);
}

// Uniformly random member-like configuration of the slice: a shuffled
// skeleton word plus randomly placed free particles, so the conserved
// quantities are exact by construction.
template <std::size_t W = 1>
BasicRing<W> random_slice_configuration(int L, int n1, int n110, Rng& rng) {
    if (n1 < 0 || n1 > L || n110 < 0) throw std::invalid_argument("random_slice_configuration: bad counts");
    if (n1 == 0 || n1 == L) {
        if (n110 != 0) throw std::invalid_argument("random_slice_configuration: infeasible");
        return n1 == 0 ? BasicRing<W>::zeros(L) : BasicRing<W>::ones(L);
    }
    const int zeros = L - n1;
    const int plus = n110;
    const int minus = zeros - plus;
    const int free_particles = n1 - 2 * n110;
    const bool feasible = minus >= 0 && free_particles >= 0 &&
                          (plus > 0 || free_particles <= minus);  // no blocks: all particles isolated
    if (!feasible) throw std::invalid_argument("random_slice_configuration: infeasible conserved quantities");

    std::vector<int> extra(std::size_t(zeros), 0);  // free particles in front of each zero site
    std::vector<char> sym(std::size_t(zeros), '-');
    for (int i = 0; i < plus; ++i) sym[std::size_t(i)] = '+';
    for (int i = zeros - 1; i > 0; --i)
        std::swap(sym[std::size_t(i)], sym[uniform_below(rng, std::uint64_t(i + 1))]);

    for (int f = 0; f < free_particles; ++f) {
        std::vector<int> eligible;
        for (int i = 0; i < zeros; ++i)
            if (sym[std::size_t(i)] == '+' || extra[std::size_t(i)] == 0) eligible.push_back(i);
        ++extra[std::size_t(eligible[uniform_below(rng, eligible.size())])];
    }

    auto x = BasicRing<W>::zeros(L);
    int site = 0;
    for (int i = 0; i < zeros; ++i) {
        const int block = (sym[std::size_t(i)] == '+' ? 2 : 0) + extra[std::size_t(i)];
        for (int b = 0; b < block; ++b) x.set(site++, true);
        ++site;  // the zero site itself
    }
    return x.rotated(int(uniform_below(rng, std::uint64_t(L))));
}

struct SweepRow {
    int L = 0, n1 = 0, n110 = 0;
    std::string alpha;  // exact "p/q"
    std::optional<FluxResult> flux;
    std::string method;  // matches flux method, or a skip flag
};

struct SweepOptions {
    std::optional<int> fixed_n110;
    std::uint64_t budget = default_state_budget;
};

// Full feasible grid (or one n110 row) of the three-dimensional fundamental
// diagram.  Points outside the universal assumptions fall back to the
// component route where enumeration fits the budget, and are flagged
// otherwise.
inline std::vector<SweepRow> fundamental_diagram_sweep(int L, const NoiseParam& alpha,
                                                       const SweepOptions& options = {}) {
    std::vector<SweepRow> rows;
    const std::string alpha_text = rational_string(alpha.alpha);
    for (int n110 = 0; 3 * n110 <= L; ++n110) {
        if (options.fixed_n110 && n110 != *options.fixed_n110) continue;
        for (int n1 = std::max(2 * n110, 0); n1 <= L - n110; ++n1) {
            if (n110 == 0 && n1 != 0 && n1 != L && L - n1 < n1) continue;  // isolated particles need room
            SweepRow row{L, n1, n110, alpha_text, {}, {}};
            FluxQuery query{L, n1, n110, alpha};
            if (alpha.alpha == 1) {
                // the driven limit: the deterministic flux surface
                const Rational qu = limit_flux_alpha_to_one(L, n1, n110);
                row.flux = FluxResult{Rational(n1, L) - qu, qu, FluxMethod::exact_universal, {}};
                row.method = "deterministic-limit";
            } else if (universal_assumptions_hold(query)) {
                row.flux = mean_flux_exact(query);
                row.method = to_string(row.flux->method);
            } else {
                try {
                    const Slice slice = enumerate_slice(L, n1, n110, options.budget);
                    if (slice.empty()) continue;
                    const auto comps = decompose(slice, Mode::shift_quotient);
                    std::optional<FluxResult> agreed;
                    bool consistent = true;
                    for (const auto& comp : comps) {
                        if (!comp.recurrent) continue;
                        FluxResult f = mean_flux_component(comp, alpha);
                        if (!agreed)
                            agreed = f;
                        else if (agreed->Q != f.Q)
                            consistent = false;
                    }
                    if (agreed && consistent) {
                        row.flux = agreed;
                        row.method = to_string(row.flux->method);
                    } else {
                        row.method = consistent ? "empty" : "component-dependent";
                    }
                } catch (const budget_exceeded&) {
                    row.method = "skipped-budget";
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace sca5
