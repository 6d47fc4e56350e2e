#pragma once

// Serialization: JSON component/stationary/verification reports, the flux
// CSV schema, partition-table dumps, and spacetime rendering.  Exact
// quantities serialize as lossless "p/q" strings; doubles appear only in the
// CSV convenience columns (15 significant digits) and Monte Carlo standard
// errors.

#include "sca5/components.hpp"
#include "sca5/flux.hpp"
#include "sca5/partition.hpp"
#include "sca5/rational.hpp"
#include "sca5/stationary.hpp"
#include "sca5/verify.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace sca5 {

using nlohmann::json;

inline std::string csv_double(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", to_double(r));
    return buf;
}

inline json component_report(const std::vector<Component>& components, int L, int n1, int n110,
                             Mode mode, std::size_t member_limit = 128) {
    json out{{"L", L}, {"n1", n1}, {"n110", n110}, {"mode", to_string(mode)}};
    out["components"] = json::array();
    for (const Component& comp : components) {
        json c{{"size", comp.members.size()},
               {"recurrent", comp.recurrent},
               {"period", comp.recurrent ? json(comp.period) : json(nullptr)},
               {"skeleton", comp.skeleton_orbit ? json(*comp.skeleton_orbit) : json(nullptr)}};
        if (comp.members.size() <= member_limit) {
            json members = json::array();
            for (const Ring& m : comp.members) members.push_back(m.to_string());
            c["members"] = members;
            if (comp.mode == Mode::shift_quotient) c["orbit_sizes"] = comp.orbit_sizes;
        }
        out["components"].push_back(std::move(c));
    }
    return out;
}

inline json stationary_report_entry(const Component& comp, const NoiseParam& alpha,
                                    const StationarityReport& report,
                                    const StationaryVector* weights = nullptr,
                                    std::size_t member_limit = 128) {
    json entry{{"size", comp.members.size()},
               {"representative", comp.members.front().to_string()},
               {"alpha", rational_string(alpha.alpha)},
               {"pass", report.ok},
               {"vectors_equal", report.vectors_equal},
               {"max_residual_numeric", rational_string(report.residual_numeric)},
               {"max_residual_closed_form", rational_string(report.residual_closed_form)}};
    if (weights && comp.members.size() <= member_limit) {
        json w = json::array();
        for (const Rational& p : weights->weights) w.push_back(rational_string(p));
        entry["weights"] = w;
    }
    return entry;
}

inline json verdict_report(const std::vector<LawVerdict>& verdicts) {
    json out{{"pass", all_pass(verdicts)}};
    out["laws"] = json::array();
    for (const LawVerdict& v : verdicts) {
        json law{{"name", v.law}, {"pass", v.pass}, {"cases", v.cases}};
        if (!v.detail.empty()) law["counterexample"] = v.detail;
        out["laws"].push_back(std::move(law));
    }
    return out;
}

inline constexpr const char* flux_csv_header = "L,n1,n110,alpha,rho1,rho110,Q,Qu,method,stderr";

inline void write_flux_csv_row(std::ostream& os, int L, int n1, int n110, const std::string& alpha,
                               const FluxResult* flux, const std::string& method) {
    os << L << ',' << n1 << ',' << n110 << ',' << alpha << ','
       << csv_double(Rational(n1, L)) << ',' << csv_double(Rational(n110, L)) << ',';
    if (flux) {
        os << csv_double(flux->Q) << ',' << csv_double(flux->Qu) << ',' << method << ',';
        if (flux->stderr_estimate) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6g", *flux->stderr_estimate);
            os << buf;
        }
    } else {
        os << ",," << method << ',';
    }
    os << '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << flux_csv_header << '\n';
    for (const SweepRow& row : rows)
        write_flux_csv_row(os, row.L, row.n1, row.n110, row.alpha,
                           row.flux ? &*row.flux : nullptr, row.method);
}

inline void write_partition_csv(std::ostream& os, const PartitionTable& table) {
    os << "k1,k2,count\n";
    for (const auto& [key, count] : table.entries)
        os << key.first << ',' << key.second << ',' << count.str() << '\n';
}

inline json partition_report(const PartitionTable& table) {
    json entries = json::array();
    for (const auto& [key, count] : table.entries)
        entries.push_back(json{{"k1", key.first}, {"k2", key.second}, {"count", count.str()}});
    return json{{"L", table.L}, {"n1", table.n1}, {"n110", table.n110}, {"entries", entries}};
}

// Spacetime rendering: '#' for occupied, '.' for empty, one row per state.
template <std::size_t W>
std::string ascii_row(const BasicRing<W>& x) {
    std::string s(std::size_t(x.length()), '.');
    for (int j = 0; j < x.length(); ++j)
        if (x.bit(j)) s[std::size_t(j)] = '#';
    return s;
}

// Binary PGM, one pixel per site, particles black.
template <std::size_t W>
void write_pgm(std::ostream& os, const std::vector<BasicRing<W>>& rows) {
    if (rows.empty()) return;
    os << "P5\n" << rows.front().length() << ' ' << rows.size() << "\n255\n";
    for (const auto& row : rows)
        for (int j = 0; j < row.length(); ++j) os.put(row.bit(j) ? char(0) : char(255));
}

}  // namespace sca5
