// Command-line surface of the sca5 toolkit.
//
// Subcommands: simulate, components, stationary, flux, fd, verify.
// Exit codes: 0 success / all checks pass, 1 usage error, 2 unsupported
// precondition or state budget exceeded, 3 verification failure.
//
// Every stochastic run requires an explicit --seed; given the seed, output
// bytes are reproducible across runs and platforms.

#include "sca5/sca5.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace sca5;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_unsupported = 2;
constexpr int exit_verification = 3;

struct OutputTarget {
    std::string path;  // empty -> stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        file << text;
    }
};

std::vector<NoiseParam> parse_alpha_list(const std::string& csv) {
    std::vector<NoiseParam> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(NoiseParam::parse(item));
    if (out.empty()) throw std::invalid_argument("empty alpha list");
    return out;
}

// ------------------------------------------------------------- simulate --

struct SimulateArgs {
    std::string system = "v-stochastic";
    int L = 0;
    std::string init;
    int n1 = -1, n110 = -1;
    std::string alpha = "1/2";
    long steps = 50;
    std::optional<std::uint64_t> seed;
    std::string format = "ascii";
    OutputTarget out;
};

template <std::size_t W>
int run_simulation(const SimulateArgs& args) {
    const bool stochastic = args.system != "u-deterministic";
    if (!args.seed && (stochastic || args.init.empty()))
        throw std::invalid_argument(
            "simulate: --seed is required for stochastic systems and random initial states");
    Rng rng(args.seed.value_or(0));
    BasicRing<W> state = BasicRing<W>::zeros(args.L > 0 ? args.L : min_ring_length);
    if (!args.init.empty()) {
        state = BasicRing<W>::from_string(args.init);
    } else {
        if (args.n1 < 0 || args.n110 < 0)
            throw std::invalid_argument("simulate: provide --init or both --n1 and --n110");
        state = random_slice_configuration<W>(args.L, args.n1, args.n110, rng);
    }
    const NoiseParam alpha = NoiseParam::parse(args.alpha);

    std::vector<BasicRing<W>> rows{state};
    rows.reserve(std::size_t(args.steps) + 1);
    for (long n = 0; n < args.steps; ++n) {
        if (args.system == "u-deterministic")
            state = step_deterministic_u(state);
        else if (args.system == "u-stochastic")
            state = step_sampled_u(state, alpha, rng);
        else if (args.system == "v-stochastic")
            state = step_sampled_v(state, alpha, rng).next;
        else
            throw std::invalid_argument("simulate: unknown system " + args.system);
        rows.push_back(state);
    }

    for (std::size_t n = 0; n < rows.size(); ++n)
        std::cerr << "n=" << n << " #1=" << count_pattern_wrapping(rows[n], "1")
                  << " #110=" << count_pattern_wrapping(rows[n], "110") << '\n';

    if (args.format == "ascii") {
        std::string text;
        for (const auto& row : rows) {
            text += ascii_row(row);
            text += '\n';
        }
        args.out.write(text);
    } else if (args.format == "pgm") {
        std::ostringstream os;
        write_pgm(os, rows);
        args.out.write(os.str());
    } else {
        throw std::invalid_argument("simulate: format must be ascii or pgm");
    }
    return exit_ok;
}

// ---------------------------------------------------------------- verify --

int run_verify(int Lmax, const std::string& alphas_csv, const OutputTarget& out) {
    VerifyOptions options;
    options.Lmax_exhaustive = std::min(Lmax, 8);
    options.Lmax_structure = std::min(Lmax, 9);
    options.Lmax_theorem = Lmax;
    options.Lmax_predecessor = std::min(Lmax, 10);
    options.alphas = parse_alpha_list(alphas_csv);
    const auto verdicts = run_verification(options);
    out.write(verdict_report(verdicts).dump(2));
    return all_pass(verdicts) ? exit_ok : exit_verification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sca5: exact analysis and simulation of a stochastic 5-neighbor cellular automaton "
                 "with two conserved quantities"};
    app.require_subcommand(1);
    // flat key=value lines under a [subcommand] section; explicit flags win
    app.set_config("--config");

    // simulate ------------------------------------------------------------
    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "render a spacetime diagram");
    simulate->add_option("--system", sim.system, "u-deterministic | u-stochastic | v-stochastic")
        ->check(CLI::IsMember({"u-deterministic", "u-stochastic", "v-stochastic"}));
    simulate->add_option("--L", sim.L, "ring length (required unless --init)");
    simulate->add_option("--init", sim.init, "initial configuration as a 0/1 string");
    simulate->add_option("--n1", sim.n1, "particle count for a random initial configuration");
    simulate->add_option("--n110", sim.n110, "110-pattern count for a random initial configuration");
    simulate->add_option("--alpha", sim.alpha, "noise level as an exact rational p/q");
    simulate->add_option("--steps", sim.steps, "number of update steps")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "RNG seed (required for stochastic systems)");
    simulate->add_option("--format", sim.format, "ascii | pgm")
        ->check(CLI::IsMember({"ascii", "pgm"}));
    simulate->add_option("--out", sim.out.path, "output path (default stdout)");

    // components ----------------------------------------------------------
    int c_L = 0, c_n1 = 0, c_n110 = 0;
    std::string c_mode = "quotient";
    std::uint64_t c_budget = default_state_budget;
    std::size_t c_members_limit = 128;
    OutputTarget c_out;
    auto* components_cmd = app.add_subcommand("components", "irreducible component report");
    components_cmd->add_option("--L", c_L)->required();
    components_cmd->add_option("--n1", c_n1)->required();
    components_cmd->add_option("--n110", c_n110)->required();
    components_cmd->add_option("--mode", c_mode)->check(CLI::IsMember({"raw", "quotient"}));
    components_cmd->add_option("--budget", c_budget, "maximum candidate states to enumerate");
    components_cmd->add_option("--members-limit", c_members_limit,
                               "omit member lists above this size");
    components_cmd->add_option("--out", c_out.path);

    // stationary ----------------------------------------------------------
    int s_L = 0, s_n1 = -1, s_n110 = -1;
    std::string s_alpha = "1/2", s_mode = "raw";
    std::uint64_t s_budget = default_state_budget;
    bool s_perturb = false;
    OutputTarget s_out;
    auto* stationary_cmd =
        app.add_subcommand("stationary", "verify stationary distributions on a slice");
    stationary_cmd->add_option("--L", s_L)->required();
    stationary_cmd->add_option("--n1", s_n1, "particle count (omit to sweep all feasible pairs)");
    stationary_cmd->add_option("--n110", s_n110);
    stationary_cmd->add_option("--alpha", s_alpha)->required();
    stationary_cmd->add_option("--mode", s_mode)->check(CLI::IsMember({"raw", "quotient"}));
    stationary_cmd->add_option("--budget", s_budget);
    stationary_cmd->add_flag("--perturb", s_perturb,
                             "test hook: perturb the weights and report the residual");
    stationary_cmd->add_option("--out", s_out.path);

    // flux ----------------------------------------------------------------
    int f_L = 0, f_n1 = 0, f_n110 = 0;
    std::string f_alpha, f_method = "auto", f_format = "csv";
    long f_steps = 3000, f_burn_in = -1;  // -1: default to 10% of the steps
    std::optional<std::uint64_t> f_seed;
    std::uint64_t f_budget = default_state_budget;
    OutputTarget f_out;
    auto* flux_cmd = app.add_subcommand("flux", "mean flux at one point");
    flux_cmd->add_option("--L", f_L)->required();
    flux_cmd->add_option("--n1", f_n1)->required();
    flux_cmd->add_option("--n110", f_n110)->required();
    flux_cmd->add_option("--alpha", f_alpha)->required();
    flux_cmd->add_option("--method", f_method)
        ->check(CLI::IsMember({"auto", "exact", "component", "mc"}));
    flux_cmd->add_option("--steps", f_steps);
    flux_cmd->add_option("--burn-in", f_burn_in, "discarded leading steps (default: 10% of --steps)");
    flux_cmd->add_option("--seed", f_seed);
    flux_cmd->add_option("--budget", f_budget);
    flux_cmd->add_option("--format", f_format)->check(CLI::IsMember({"csv", "json"}));
    flux_cmd->add_option("--out", f_out.path);

    // fd --------------------------------------------------------------
    int d_L = 0;
    std::string d_alpha;
    std::optional<int> d_n110;
    bool d_with_mc = false;
    long d_steps = 3000;
    std::optional<std::uint64_t> d_seed;
    std::uint64_t d_budget = default_state_budget;
    OutputTarget d_out;
    auto* fd_cmd = app.add_subcommand("fd", "fundamental-diagram sweep as CSV");
    fd_cmd->add_option("--L", d_L)->required();
    fd_cmd->add_option("--alpha", d_alpha)->required();
    fd_cmd->add_option("--n110", d_n110, "restrict the sweep to one n110 row");
    fd_cmd->add_flag("--with-mc", d_with_mc, "append Monte Carlo rows at the exact points");
    fd_cmd->add_option("--steps", d_steps);
    fd_cmd->add_option("--seed", d_seed);
    fd_cmd->add_option("--budget", d_budget);
    fd_cmd->add_option("--out", d_out.path);

    // partition ---------------------------------------------------------
    int p_L = 0, p_n1 = 0, p_n110 = 0;
    std::string p_mode = "raw", p_format = "csv";
    std::uint64_t p_budget = default_state_budget;
    OutputTarget p_out;
    auto* partition_cmd =
        app.add_subcommand("partition", "per-component partition tables N(k1, k2)");
    partition_cmd->add_option("--L", p_L)->required();
    partition_cmd->add_option("--n1", p_n1)->required();
    partition_cmd->add_option("--n110", p_n110)->required();
    partition_cmd->add_option("--mode", p_mode)->check(CLI::IsMember({"raw", "quotient"}));
    partition_cmd->add_option("--format", p_format)->check(CLI::IsMember({"csv", "json"}));
    partition_cmd->add_option("--budget", p_budget);
    partition_cmd->add_option("--out", p_out.path);

    // verify ----------------------------------------------------------
    int v_Lmax = 9;
    std::string v_alphas = "1/4,1/2,3/4";
    OutputTarget v_out;
    auto* verify_cmd = app.add_subcommand("verify", "run the law suites");
    verify_cmd->add_option("--Lmax", v_Lmax, "largest ring length for the exhaustive suites")
        ->check(CLI::Range(4, 16));
    verify_cmd->add_option("--alphas", v_alphas, "comma-separated exact rationals");
    verify_cmd->add_option("--out", v_out.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the usage message
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*simulate) {
            if (sim.init.empty() && sim.L == 0)
                throw std::invalid_argument("simulate: provide --L or --init");
            if (!sim.init.empty()) sim.L = int(sim.init.size());
            return sim.L <= Ring::max_length ? run_simulation<1>(sim) : run_simulation<4>(sim);
        }

        if (*components_cmd) {
            const Mode mode = c_mode == "raw" ? Mode::raw : Mode::shift_quotient;
            const Slice slice = enumerate_slice(c_L, c_n1, c_n110, c_budget);
            const auto comps = decompose(slice, mode);
            c_out.write(component_report(comps, c_L, c_n1, c_n110, mode, c_members_limit).dump(2));
            return exit_ok;
        }

        if (*stationary_cmd) {
            const NoiseParam alpha = NoiseParam::parse(s_alpha);
            const Mode mode = s_mode == "raw" ? Mode::raw : Mode::shift_quotient;
            if ((s_n1 < 0) != (s_n110 < 0))
                throw std::invalid_argument("stationary: give both --n1 and --n110, or neither");
            std::vector<std::pair<int, int>> pairs;
            if (s_n1 >= 0) {
                pairs.emplace_back(s_n1, s_n110);
            } else {
                for (int n1 = 0; n1 <= s_L; ++n1)
                    for (int n110 = 0; 3 * n110 <= s_L; ++n110)
                        if (density_bound_holds(s_L, n1, n110)) pairs.emplace_back(n1, n110);
            }
            json out = json::array();
            bool all_ok = true;
            for (const auto& [n1, n110] : pairs) {
                const Slice slice = enumerate_slice(s_L, n1, n110, s_budget);
                for (const Component& comp : decompose(slice, mode)) {
                    if (!comp.recurrent) continue;
                    StationarityReport report = verify_stationarity(comp, alpha);
                    StationaryVector weights = stationary_closed_form(comp, alpha);
                    if (s_perturb && weights.weights.size() > 1) {
                        weights.weights[0] += Rational(1, 997);
                        weights.weights[1] -= Rational(1, 997);
                        const Rational res = stationarity_residual(comp, alpha, weights.weights);
                        report.ok = res == 0;
                        report.residual_closed_form = res;
                    }
                    all_ok = all_ok && report.ok;
                    out.push_back(stationary_report_entry(comp, alpha, report, &weights));
                }
            }
            s_out.write(json{{"L", s_L}, {"alpha", s_alpha}, {"pass", all_ok}, {"components", out}}
                            .dump(2));
            return all_ok ? exit_ok : exit_verification;
        }

        if (*flux_cmd) {
            const NoiseParam alpha = NoiseParam::parse(f_alpha);
            const FluxQuery query{f_L, f_n1, f_n110, alpha};
            std::optional<FluxResult> flux;
            if (f_method == "exact" || (f_method == "auto" && universal_assumptions_hold(query))) {
                flux = mean_flux_exact(query);
            } else if (f_method == "mc") {
                if (!f_seed) throw std::invalid_argument("flux --method mc requires --seed");
                const long burn_in = f_burn_in < 0 ? f_steps / 10 : f_burn_in;
                Rng rng(*f_seed);
                if (f_L <= Ring::max_length) {
                    const Ring v0 = random_slice_configuration(f_L, f_n1, f_n110, rng);
                    flux = mean_flux_monte_carlo(v0, alpha, McParams{f_steps, burn_in, *f_seed});
                } else {
                    const WideRing v0 = random_slice_configuration<4>(f_L, f_n1, f_n110, rng);
                    flux = mean_flux_monte_carlo(v0, alpha, McParams{f_steps, burn_in, *f_seed});
                }
            } else {
                const Slice slice = enumerate_slice(f_L, f_n1, f_n110, f_budget);
                if (slice.empty()) throw unsupported_precondition("flux: empty slice");
                std::optional<FluxResult> agreed;
                for (const Component& comp : decompose(slice, Mode::shift_quotient)) {
                    if (!comp.recurrent) continue;
                    const FluxResult f = mean_flux_component(comp, alpha);
                    if (agreed && agreed->Q != f.Q)
                        throw unsupported_precondition(
                            "flux: components disagree outside the universal assumptions");
                    agreed = f;
                }
                flux = agreed;
            }
            if (!flux) throw unsupported_precondition("flux: no recurrent component found");
            if (f_format == "csv") {
                std::ostringstream os;
                os << flux_csv_header << '\n';
                write_flux_csv_row(os, f_L, f_n1, f_n110, rational_string(alpha.alpha), &*flux,
                                   to_string(flux->method));
                f_out.write(os.str());
            } else {
                json row{{"L", f_L},
                         {"n1", f_n1},
                         {"n110", f_n110},
                         {"alpha", rational_string(alpha.alpha)},
                         {"Q", rational_string(flux->Q)},
                         {"Qu", rational_string(flux->Qu)},
                         {"method", to_string(flux->method)}};
                if (flux->stderr_estimate) row["stderr"] = *flux->stderr_estimate;
                f_out.write(row.dump(2));
            }
            return exit_ok;
        }

        if (*fd_cmd) {
            const NoiseParam alpha = NoiseParam::parse(d_alpha);
            SweepOptions options;
            options.fixed_n110 = d_n110;
            options.budget = d_budget;
            auto rows = fundamental_diagram_sweep(d_L, alpha, options);
            if (d_with_mc) {
                if (!d_seed) throw std::invalid_argument("fd --with-mc requires --seed");
                const std::vector<SweepRow> exact_rows = rows;
                for (const SweepRow& row : exact_rows) {
                    if (!row.flux || row.n1 == 0 || row.n1 == row.L) continue;
                    // derive a per-point seed so rows are independent but reproducible
                    Rng rng(*d_seed ^ (std::uint64_t(row.n1) << 20) ^ std::uint64_t(row.n110));
                    const Ring v0 = random_slice_configuration(d_L, row.n1, row.n110, rng);
                    SweepRow mc = row;
                    mc.flux = mean_flux_monte_carlo(v0, alpha, McParams{d_steps, 0, rng()});
                    mc.method = to_string(mc.flux->method);
                    rows.push_back(mc);
                }
            }
            std::ostringstream os;
            write_sweep_csv(os, rows);
            d_out.write(os.str());
            return exit_ok;
        }

        if (*partition_cmd) {
            const Mode mode = p_mode == "raw" ? Mode::raw : Mode::shift_quotient;
            const Slice slice = enumerate_slice(p_L, p_n1, p_n110, p_budget);
            const auto comps = decompose(slice, mode);
            if (p_format == "csv") {
                std::ostringstream os;
                for (const Component& comp : comps) {
                    os << "# component " << comp.members.front().to_string() << " size "
                       << comp.size() << '\n';
                    write_partition_csv(os, partition_function_brute(comp));
                }
                p_out.write(os.str());
            } else {
                json out = json::array();
                for (const Component& comp : comps) {
                    json entry = partition_report(partition_function_brute(comp));
                    entry["representative"] = comp.members.front().to_string();
                    out.push_back(std::move(entry));
                }
                p_out.write(out.dump(2));
            }
            return exit_ok;
        }

        if (*verify_cmd) return run_verify(v_Lmax, v_alphas, v_out);
    } catch (const unsupported_precondition& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
