// Acceptance runner: executes every acceptance criterion at its stated
// bounds and tolerances and prints exactly one PASS/FAIL line per criterion.
// Exit status 0 iff all criteria pass.

#include "sca5/sca5.hpp"
#include "worked_examples.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sca5;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Component find_component(const std::vector<Component>& comps, const std::string& member) {
    for (const Component& c : comps)
        if (c.index_of(Ring::from_string(member).canonical_rotation()) >= 0) return c;
    throw std::runtime_error("component containing " + member + " not found");
}

bool proportional(const std::vector<Rational>& p, const std::vector<Rational>& v) {
    if (p.size() != v.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] * v[0] != p[0] * v[i]) return false;
    return true;
}

std::vector<std::string> member_strings(const Component& c) {
    std::vector<std::string> out;
    for (const Ring& m : c.members) out.push_back(m.to_string());
    return out;
}

const std::vector<NoiseParam> kAlphas = {NoiseParam{Rational(1, 4)}, NoiseParam{Rational(1, 2)},
                                         NoiseParam{Rational(3, 4)}};

// ------------------------------------------------------------ criteria --

void criterion_1_components() {
    const auto t0 = std::chrono::steady_clock::now();
    const Slice slice = enumerate_slice(10, 6, 2);
    const auto comps = decompose(slice, Mode::shift_quotient);
    const double elapsed = seconds_since(t0);
    bool pass = comps.size() == 2 && member_strings(comps[0]) == worked::omega1_members &&
                member_strings(comps[1]) == worked::omega2_members && elapsed < 1.0;
    std::ostringstream detail;
    detail << comps.size() << " components, sizes";
    for (const auto& c : comps) detail << ' ' << c.size();
    detail << ", " << elapsed << " s";
    report(1, "component reproduction on the (10,6,2) slice", pass, detail.str());
}

void criterion_2_matrices() {
    const NoiseParam alpha{Rational(1, 2)};
    const Slice slice = enumerate_slice(10, 6, 2);
    const auto comps = decompose(slice, Mode::shift_quotient);
    bool pass = true;
    const auto check_matrix = [&](const Component& c, const auto& tokens) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            const TransitionRecord rec = successors(c.members[i]);
            for (std::size_t j = 0; j < c.size(); ++j) {
                Rational entry = 0;
                for (const auto& e : rec.edges)
                    if (e.target.canonical_rotation() == c.members[j])
                        entry += Rational(e.multiplicity) * pow_rational(alpha.alpha, e.ell) *
                                 pow_rational(Rational(1) - alpha.alpha, rec.k - e.ell);
                if (entry != worked::token_value(tokens[i][j], alpha.alpha)) pass = false;
            }
        }
    };
    check_matrix(find_component(comps, worked::omega1_members[0]), worked::omega1_matrix);
    check_matrix(find_component(comps, worked::omega2_members[0]), worked::omega2_matrix);
    report(2, "transition matrices at alpha = 1/2, entry-exact", pass);
}

void criterion_3_eigenvectors() {
    const Slice slice10 = enumerate_slice(10, 6, 2);
    const auto comps10 = decompose(slice10, Mode::shift_quotient);
    const Component c1 = find_component(comps10, worked::omega1_members[0]);
    const Component c2 = find_component(comps10, worked::omega2_members[0]);
    const Slice slice16 = enumerate_slice(16, 11, 4);
    const Component c16 =
        find_component(decompose(slice16, Mode::shift_quotient), worked::l16_members[0]);

    bool pass = c16.size() == 30 && member_strings(c16) == worked::l16_members;
    for (const NoiseParam& alpha : kAlphas) {
        pass = pass &&
               proportional(stationary_numeric(c1, alpha).weights,
                            worked::omega1_eigenvector(alpha.alpha)) &&
               proportional(stationary_numeric(c2, alpha).weights,
                            worked::omega2_eigenvector(alpha.alpha)) &&
               proportional(stationary_closed_form(c16, alpha).weights,
                            worked::l16_eigenvector(alpha.alpha));
    }
    report(3, "stationary eigenvectors (both 10-site families and the 30-class component)", pass);
}

void criterion_4_stationarity() {
    const LawVerdict v = verify_closed_form_stationarity(11, kAlphas);
    std::ostringstream detail;
    detail << v.cases << " (component, alpha) solves";
    if (!v.pass) detail << "; " << v.detail;
    report(4, "closed form equals the exact solve for all components, L <= 11", v.pass, detail.str());
}

void criterion_5_partitions() {
    const Slice slice = enumerate_slice(10, 6, 2);
    const auto comps = decompose(slice, Mode::raw);
    const Component c1 = find_component(comps, worked::omega1_members[0]);
    const Component c2 = find_component(comps, worked::omega2_members[0]);
    const PartitionTable t1 = partition_function_brute(c1);
    const PartitionTable t2 = partition_function_brute(c2);
    bool pass = t1.at(1, 1) == 40 && t1.at(1, 0) == 20 && t1.at(0, 2) == 10 && t1.at(2, 0) == 10 &&
                t2.at(1, 1) == 20 && t2.at(1, 0) == 10 && t2.at(0, 2) == 5 && t2.at(2, 0) == 5 &&
                component_constant(c1) == 10 && component_constant(c2) == 5 &&
                universal_factor(10, 6, 2, 1, 1) == 4 && universal_factor(10, 6, 2, 1, 0) == 2 &&
                universal_factor(10, 6, 2, 0, 2) == 1 && universal_factor(10, 6, 2, 2, 0) == 1;

    std::ostringstream detail;
    for (const LawVerdict& v : verify_partition_laws(11)) {
        pass = pass && v.pass;
        detail << v.law << "=" << v.cases << " ";
        if (!v.pass) detail << "(" << v.detail << ") ";
    }
    report(5, "partition tables and universal factorization, L <= 11", pass, detail.str());
}

void criterion_6_predecessors() {
    bool pass = true;
    std::ostringstream detail;

    const Ring word49 = Ring::from_string(worked::pred49_configuration);
    const auto witnesses = predecessor_enumerate(word49);
    pass = pass && witnesses.size() == 16;
    detail << "|B(49-site example)| = " << witnesses.size();

    for (const LawVerdict& v : verify_predecessor_laws(10, kAlphas)) {
        pass = pass && v.pass;
        if (!v.pass) detail << "; " << v.law << ": " << v.detail;
    }
    report(6, "predecessor calculus vs. brute force, cardinality, census, balance (L <= 10)", pass,
           detail.str());
}

void criterion_7_flux_independence() {
    bool pass = true;
    long long cases = 0;
    std::ostringstream detail;
    for (const NoiseParam& alpha : kAlphas) {
        const LawVerdict v = verify_flux_independence(11, alpha);
        pass = pass && v.pass;
        cases += v.cases;
        if (!v.pass) detail << v.detail;
    }
    report(7, "component-independent mean flux, L <= 11 (" + std::to_string(cases) + " components)",
           pass, detail.str());
}

void criterion_8_figure_scale() {
    const NoiseParam alpha{Rational(7, 10)};
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Rational> exact_q(54);
    for (int n1 = 14; n1 <= 53; ++n1) exact_q[std::size_t(n1)] = mean_flux_exact({60, n1, 7, alpha}).Q;
    const double elapsed = seconds_since(t0);
    bool pass = elapsed < 10.0;

    std::ostringstream detail;
    detail << "exact sweep " << elapsed << " s;";
    Rng seeder(2024);
    for (int n1 : {14, 24, 34, 44, 53}) {
        const Ring v0 = random_slice_configuration(60, n1, 7, seeder);
        const FluxResult mc = mean_flux_monte_carlo(v0, alpha, McParams{3000, 0, 20240810, 15});
        const double gap = std::abs(to_double(mc.Q) - to_double(exact_q[std::size_t(n1)]));
        const bool ok = gap <= 3.0 * *mc.stderr_estimate;
        pass = pass && ok;
        detail << " n1=" << n1 << " gap=" << gap << (ok ? "" : " (exceeds 3 se)");
    }
    report(8, "flux curve at L=60, n110=7, alpha=7/10: exact timing and Monte Carlo agreement",
           pass, detail.str());
}

void criterion_9_zero_noise() {
    const NoiseParam near_one{Rational(999999, 1000000)};
    bool pass = true;
    std::ostringstream detail;

    // rho1 = 2/3, rho110 = 1/3 at L = 12: the slice is frozen, Q = 0 exactly
    {
        const Slice slice = enumerate_slice(12, 8, 4);
        Rational qu;
        bool first = true;
        for (const Component& c : decompose(slice, Mode::shift_quotient)) {
            const FluxResult f = mean_flux_component(c, near_one);
            if (first) qu = f.Qu;
            first = false;
            if (f.Qu != qu) pass = false;
        }
        const Rational target = zero_noise_limit(Rational(2, 3), Rational(1, 3));
        Rational gap = qu - target;
        if (gap < 0) gap = -gap;
        pass = pass && gap < Rational(1, 1000) &&
               limit_flux_alpha_to_one(12, 8, 4) == target;
        detail << "(2/3,1/3): |Qu - 2/3| = " << rational_string(gap);
    }

    // rho1 = 3/4, rho110 = 1/4 at L = 12: interior assumptions hold
    {
        const FluxResult f = mean_flux_exact({12, 9, 3, near_one});
        const Rational target = zero_noise_limit(Rational(3, 4), Rational(1, 4));
        Rational gap = f.Qu - target;
        if (gap < 0) gap = -gap;
        pass = pass && gap < Rational(1, 1000) &&
               limit_flux_alpha_to_one(12, 9, 3) == target;
        detail << "; (3/4,1/4): |Qu - 1/2| = " << to_double(gap);
    }
    report(9, "zero-noise limit at the anchor densities, numeric and symbolic", pass, detail.str());
}

void criterion_10_conservation_suites() {
    bool pass = true;
    long long cases = 0;
    std::ostringstream detail;
    const auto absorb = [&](const std::vector<LawVerdict>& verdicts) {
        for (const auto& v : verdicts) {
            pass = pass && v.pass;
            cases += v.cases;
            if (!v.pass) detail << v.law << ": " << v.detail << "; ";
        }
    };
    absorb(verify_flux_tables());
    absorb(verify_one_step_laws(8));
    absorb(verify_predecessor_characterization(9));
    absorb({verify_periodicity_criterion(9)});
    absorb({verify_single_exponent(9)});
    report(10, "conservation, table identities and one-step lemma suites (" +
                   std::to_string(cases) + " cases)",
           pass, detail.str());
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1_components();
    criterion_2_matrices();
    criterion_3_eigenvectors();
    criterion_4_stationarity();
    criterion_5_partitions();
    criterion_6_predecessors();
    criterion_7_flux_independence();
    criterion_8_figure_scale();
    criterion_9_zero_noise();
    criterion_10_conservation_suites();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
