#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zfr/classical.hpp"
#include "zfr/config.hpp"
#include "zfr/exceptional.hpp"
#include "zfr/polysearch.hpp"
#include "zfr/trigpoly.hpp"
#include "zfr/version.hpp"

namespace zfr {

// --- digests and number formatting -------------------------------------------

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Full-precision decimal form: round-trips to the same binary64.
inline std::string str17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string str_fixed(double x, int dp) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", dp, x);
    return buf;
}

// --- run manifest -------------------------------------------------------------
//
// Every emitted file carries the subcommand, resolved configuration, artifact
// version, and input digests; the wall-clock stamp sits on a single line of
// its own so outputs are byte-identical up to that line.

struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> config;  // resolved flag echo
    std::vector<std::pair<std::string, std::string>> inputs;  // path -> fnv1a64
    std::string generated;                                    // timestamp + duration
};

inline std::string utc_timestamp_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline RunManifest make_manifest(std::string subcommand,
                                 std::vector<std::pair<std::string, std::string>> config,
                                 std::vector<std::pair<std::string, std::string>> inputs) {
    RunManifest m;
    m.subcommand = std::move(subcommand);
    m.config = std::move(config);
    m.inputs = std::move(inputs);
    m.generated = utc_timestamp_now();
    return m;
}

inline void write_manifest_comments(const RunManifest& m, std::ostream& os) {
    os << "# subcommand: " << m.subcommand << "\n";
    os << "# version: " << version << "\n";
    for (const auto& [k, v] : m.config) os << "# " << k << ": " << v << "\n";
    for (const auto& [path, digest] : m.inputs)
        os << "# input: " << path << " fnv1a64:" << digest << "\n";
    os << "# generated: " << m.generated << "\n";
}

inline nlohmann::json manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["subcommand"] = m.subcommand;
    j["version"] = version;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& [path, digest] : m.inputs)
        inputs.push_back({{"path", path}, {"fnv1a64", digest}});
    j["inputs"] = inputs;
    j["generated"] = m.generated;
    return j;
}

// --- gamma-factor bound table --------------------------------------------------

inline void emit_gamma_table_csv(const GammaBoundTable& tab, int round_dp,
                                 const RunManifest& m, std::ostream& os) {
    write_manifest_comments(m, os);
    os << "# alpha_eps: " << str17(tab.alpha_eps) << "\n";
    os << "# d_eps0: " << str17(tab.d_eps0) << "\n";
    os << "k,B_raw,B_eps,S1,S2,S\n";
    for (const auto& row : tab.rows)
        os << row.k << ',' << str17(row.B_raw) << ',' << str_fixed(row.B_eps, round_dp) << ','
           << str17(row.S1) << ',' << str17(row.S2) << ',' << str17(row.S) << "\n";
}

inline void emit_gamma_table_json(const GammaBoundTable& tab, const RunManifest& m,
                                  std::ostream& os) {
    nlohmann::json j;
    j["manifest"] = manifest_json(m);
    j["epsilon"] = tab.epsilon;
    j["alpha_eps"] = tab.alpha_eps;
    j["d_eps0"] = tab.d_eps0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : tab.rows)
        rows.push_back({{"k", row.k},
                        {"B_raw", row.B_raw},
                        {"B_eps", row.B_eps},
                        {"S1", row.S1},
                        {"S2", row.S2},
                        {"S", row.S}});
    j["rows"] = rows;
    os << j.dump(2) << "\n";
}

// --- region constants ----------------------------------------------------------

inline void emit_constants_csv(const RegionConstants& rc, const RunManifest& m,
                               std::ostream& os) {
    write_manifest_comments(m, os);
    os << "name,value,published\n";
    os << "c1," << str17(rc.c1) << ",\n";
    os << "c2," << str17(rc.c2) << ",\n";
    os << "c3," << str17(rc.c3) << ",\n";
    os << "c4," << str17(rc.c4) << ",\n";
    os << "r_star," << str17(rc.r_star) << ",\n";
    os << "M," << str17(rc.M) << ",\n";
    const char* names[4] = {"C1", "C2", "C3", "C4"};
    const double raw[4] = {rc.C1, rc.C2, rc.C3, rc.C4};
    for (int i = 0; i < 4; ++i)
        os << names[i] << ',' << str17(raw[i]) << ','
           << str_fixed(rc.published[static_cast<std::size_t>(i)],
                        std::abs(raw[i]) < 0.1 ? 5 : 4)
           << "\n";
}

inline void emit_constants_json(const RegionConstants& rc, const RunManifest& m,
                                std::ostream& os) {
    nlohmann::json j;
    j["manifest"] = manifest_json(m);
    j["c1"] = rc.c1;
    j["c2"] = rc.c2;
    j["c3"] = rc.c3;
    j["c4"] = rc.c4;
    j["r_star"] = rc.r_star;
    j["M"] = rc.M;
    j["C1"] = rc.C1;
    j["C2"] = rc.C2;
    j["C3"] = rc.C3;
    j["C4"] = rc.C4;
    j["published"] = {rc.published[0], rc.published[1], rc.published[2], rc.published[3]};
    os << j.dump(2) << "\n";
}

// --- exceptional-zero results ----------------------------------------------------

inline nlohmann::json exceptional_json(const ExceptionalResult& res) {
    nlohmann::json j;
    j["d1"] = res.split.d1;
    j["d2"] = res.split.d2;
    j["regionA"] = {{"r", res.rA}, {"c", res.cA}, {"inv_c", res.invA}};
    j["regionB"] = {{"r", res.rB},
                    {"c", res.cB},
                    {"inv_c", res.invB},
                    {"constraints_ok", res.constraints_ok_B},
                    {"sign_changes", res.sign_changes_B}};
    j["regionC"] = {{"r", res.rC},
                    {"c", res.cC},
                    {"inv_c", res.invC},
                    {"constraints_ok", res.constraints_ok_C},
                    {"sign_changes", res.sign_changes_C}};
    j["R"] = res.R;
    return j;
}

inline void emit_exceptional_json(const ExceptionalResult& res, const RunManifest& m,
                                  std::ostream& os) {
    nlohmann::json j = exceptional_json(res);
    j["manifest"] = manifest_json(m);
    os << j.dump(2) << "\n";
}

inline void emit_cells_csv(const std::vector<SplitCell>& cells, const RunManifest& m,
                           std::ostream& os) {
    write_manifest_comments(m, os);
    os << "d1,d2,invA,invB,invC,R,feasible\n";
    for (const auto& cell : cells) {
        os << str17(cell.d1) << ',' << str17(cell.d2) << ',';
        if (cell.feasible)
            os << str17(cell.invA) << ',' << str17(cell.invB) << ',' << str17(cell.invC) << ','
               << str17(cell.R) << ",1\n";
        else
            os << ",,,,0\n";
    }
}

// --- annealing outputs -----------------------------------------------------------

inline void emit_trace_csv(const std::vector<TraceRow>& trace, const RunManifest& m,
                           std::ostream& os) {
    write_manifest_comments(m, os);
    os << "step,temperature,current_value,best_value\n";
    for (const auto& row : trace)
        os << row.step << ',' << str17(row.temperature) << ',' << str17(row.current_value)
           << ',' << str17(row.best_value) << "\n";
}

// --- admissibility report ----------------------------------------------------------

inline void emit_admissibility_text(const TrigPoly& p, const AdmissibilityReport& rep,
                                    std::ostream& os) {
    os << "degree: " << p.degree << "\n";
    os << "coeff_sign_ok: " << (rep.coeff_sign_ok ? "yes" : "no") << "\n";
    os << "a0_lt_a1_ok: " << (rep.a0_lt_a1_ok ? "yes" : "no") << "\n";
    os << "nonneg_ok: " << (rep.nonneg_ok ? "yes" : "no") << "\n";
    os << "min_value_lower_bound: " << str17(rep.min_value_lower_bound) << "\n";
    os << "witness_phi: " << str17(rep.witness_phi) << "\n";
    os << "admissible: " << (rep.admissible() ? "yes" : "no") << "\n";
}

} // namespace zfr
