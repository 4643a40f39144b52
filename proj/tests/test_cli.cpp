#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI binary with the given arguments, capturing stdout+stderr.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ZFR_CLI_BIN_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// The manifest's "# generated:" line carries a timestamp; strip it when
// comparing two otherwise byte-identical runs.
std::string strip_generated(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# generated:", 0) != 0) out << line << '\n';
    return out.str();
}

std::string data_path(const char* name) {
    return std::string(ZFR_DATA_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_temp(const char* name, const std::string& content) {
    const std::string path = std::string("/tmp/zfr_cli_test_") + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("cli: version and usage errors", "[cli]") {
    REQUIRE(run_cli("--version").out.find("0.1.0") != std::string::npos);
    REQUIRE(run_cli("--version").exit_code == 0);
    REQUIRE(run_cli("").exit_code == 2);            // a subcommand is required
    REQUIRE(run_cli("nosuch").exit_code == 2);      // unknown subcommand
    REQUIRE(run_cli("--help").exit_code == 0);
    REQUIRE(run_cli("tables --help").exit_code == 0);
}

TEST_CASE("cli: tables emits the published bounds and audits pass", "[cli]") {
    const auto res = run_cli("tables --epsilon 0.15");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.out.find("k,B_raw,B_eps,S1,S2,S") != std::string::npos);
    REQUIRE(res.out.find("# alpha_eps: 0.021469949773311") != std::string::npos);
    REQUIRE(res.out.find("0.23445351") != std::string::npos);   // k = 1 ceiling
    REQUIRE(res.out.find("0.00071302") != std::string::npos);   // k = 16 ceiling
    REQUIRE(res.out.find("# subcommand: tables") != std::string::npos);
    // 16 data rows.
    int rows = 0;
    std::istringstream in(res.out);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] >= '1' && line[0] <= '9') ++rows;
    REQUIRE(rows == 16);
}

TEST_CASE("cli: runs are byte-identical up to the generated line", "[cli]") {
    const auto a = run_cli("tables --epsilon 0.15");
    const auto b = run_cli("tables --epsilon 0.15");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(strip_generated(a.out) == strip_generated(b.out));
    REQUIRE(a.out.find("# generated:") != std::string::npos);
}

TEST_CASE("cli: --out writes the same bytes as stdout", "[cli]") {
    const std::string path = "/tmp/zfr_cli_test_tables.csv";
    const auto filed = run_cli("tables --epsilon 0.01 --out " + path);
    REQUIRE(filed.exit_code == 0);
    const auto direct = run_cli("tables --epsilon 0.01");
    REQUIRE(strip_generated(read_file(path)) == strip_generated(direct.out));
    std::remove(path.c_str());
}

TEST_CASE("cli: tables respects --poly and --kmax", "[cli]") {
    const auto res = run_cli("tables --epsilon 0.15 --poly " + data_path("p4.json"));
    REQUIRE(res.exit_code == 0);  // kmax defaults to the polynomial degree
    int rows = 0;
    std::istringstream in(res.out);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] >= '1' && line[0] <= '9') ++rows;
    REQUIRE(rows == 4);
    REQUIRE(run_cli("tables --kmax 3").out.find("3,") != std::string::npos);
}

TEST_CASE("cli: constants JSON carries the published quadruple", "[cli]") {
    const auto res = run_cli("constants --epsilon 0.01 --format json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.out);
    REQUIRE(j["manifest"]["version"] == "0.1.0");
    REQUIRE(std::abs(j["C1"].get<double>() - 12.241060991800133) < 1e-9);
    REQUIRE(std::abs(j["C2"].get<double>() - 9.53465063035984) < 1e-9);
    REQUIRE(std::abs(j["C3"].get<double>() - 0.050168181296519329) < 1e-9);
    REQUIRE(std::abs(j["C4"].get<double>() - 2.2691827202163877) < 1e-9);
    const auto pub = j["published"];
    REQUIRE(pub[0].get<double>() == 12.2411);
    REQUIRE(pub[1].get<double>() == 9.5347);
    REQUIRE(pub[2].get<double>() == 0.05017);
    REQUIRE(pub[3].get<double>() == 2.2692);
}

TEST_CASE("cli: exceptional reproduces the headline R and guards its flags", "[cli]") {
    const auto res = run_cli("exceptional --d1 1.0015 --d2 2.318");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.out);
    REQUIRE(std::abs(j["R"].get<double>() - 12.43436) < 1e-3);
    REQUIRE(std::abs(j["regionA"]["inv_c"].get<double>() - 9.7946) < 1e-3);
    REQUIRE(std::abs(j["regionB"]["inv_c"].get<double>() - 12.43355) < 1e-3);
    REQUIRE(std::abs(j["regionC"]["inv_c"].get<double>() - 12.43436) < 1e-3);
    REQUIRE(j["regionB"]["constraints_ok"].get<bool>());
    REQUIRE(j["regionC"]["sign_changes"].get<int>() == 1);

    REQUIRE(run_cli("exceptional --d1 1.0015").exit_code == 2);  // --d1 needs --d2
    REQUIRE(run_cli("exceptional --search --d1 1.0").exit_code == 2);  // mutually exclusive
    // Inverted split values are rejected as a usage error too.
    REQUIRE(run_cli("exceptional --d1 2.0 --d2 1.0").exit_code == 2);
}

TEST_CASE("cli: exceptional --search sweeps a grid and writes cells", "[cli]") {
    const std::string cells = "/tmp/zfr_cli_test_cells.csv";
    const auto res = run_cli(
        "exceptional --search --d1-lo 1.0005 --d1-hi 1.0025 --d2-lo 2.317 --d2-hi 2.319 "
        "--d1-step 1e-3 --d2-step 1e-3 --cells-out " + cells);
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.out);
    REQUIRE(j["R"].get<double>() <= 12.4346);
    const std::string cells_text = read_file(cells);
    REQUIRE(cells_text.find("d1,d2,invA,invB,invC,R,feasible") != std::string::npos);
    int rows = 0;
    std::istringstream in(cells_text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] == '1') ++rows;
    REQUIRE(rows == 9);
    std::remove(cells.c_str());
}

TEST_CASE("cli: verify-poly exit codes separate parse from inadmissible", "[cli]") {
    REQUIRE(run_cli("verify-poly " + data_path("mt16.json")).exit_code == 0);
    REQUIRE(run_cli("verify-poly " + data_path("p4.json")).exit_code == 0);

    const std::string inadm =
        write_temp("inadm.json", R"({"degree": 2, "coeffs": ["1.0", "0.5", "0.1"]})");
    const auto r1 = run_cli("verify-poly " + inadm);
    REQUIRE(r1.exit_code == 1);
    REQUIRE(r1.out.find("admissible: no") != std::string::npos);

    const std::string corrupt =
        write_temp("corrupt.json", R"({"degree": 2, "coeffs": ["1.0", "oops", "0.1"]})");
    REQUIRE(run_cli("verify-poly " + corrupt).exit_code == 2);
    REQUIRE(run_cli("verify-poly /nonexistent.json").exit_code == 2);
    REQUIRE(run_cli("verify-poly").exit_code == 2);  // missing positional
    std::remove(inadm.c_str());
    std::remove(corrupt.c_str());
}

TEST_CASE("cli: epsilon range is enforced at parse time", "[cli]") {
    REQUIRE(run_cli("tables --epsilon 0.5").exit_code == 2);
    REQUIRE(run_cli("tables --epsilon 0").exit_code == 2);
    REQUIRE(run_cli("tables --epsilon -0.1").exit_code == 2);
    REQUIRE(run_cli("constants --epsilon 0.2").exit_code == 2);
    REQUIRE(run_cli("tables --format xml").exit_code == 2);
}

TEST_CASE("cli: anneal smoke run with trace", "[cli]") {
    const std::string trace = "/tmp/zfr_cli_test_trace.csv";
    const auto res = run_cli(
        "anneal --degree 4 --start " + data_path("p4.json") +
        " --seed 11 --steps 25 --cooling-rate 0.9 --trace-out " + trace);
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.out);
    REQUIRE(j["degree"].get<int>() == 4);
    REQUIRE(j["coeffs"].size() == 5);
    REQUIRE(j["objective"] == "c1ratio");
    REQUIRE(j["best_value"].get<double>() <= 12.6015197131 + 1e-9);

    const std::string trace_text = read_file(trace);
    REQUIRE(trace_text.find("step,temperature,current_value,best_value") != std::string::npos);
    int rows = 0;
    std::istringstream in(trace_text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && (line[0] >= '1' && line[0] <= '9')) ++rows;
    REQUIRE(rows == 25);
    std::remove(trace.c_str());

    // Determinism across runs: identical best polynomial bytes.
    const auto again = run_cli(
        "anneal --degree 4 --start " + data_path("p4.json") +
        " --seed 11 --steps 25 --cooling-rate 0.9");
    REQUIRE(strip_generated(again.out).find("\"best_value\"") != std::string::npos);
    nlohmann::json j2 = nlohmann::json::parse(again.out);
    REQUIRE(j2["best_value"].get<double>() == j["best_value"].get<double>());
    REQUIRE(j2["coeffs"] == j["coeffs"]);
}

TEST_CASE("cli: reproduce-all passes and reports machine-readable results", "[cli]") {
    const auto res = run_cli("reproduce-all --json");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.out);
    REQUIRE(j["failed"].get<int>() == 0);
    REQUIRE(j["total"].get<int>() >= 40);
    REQUIRE(j["checks"].size() == static_cast<std::size_t>(j["total"].get<int>()));
    for (const auto& c : j["checks"]) REQUIRE(c["pass"].get<bool>());

    // A corrupted polynomial file is a parse failure (exit 2).
    const std::string corrupt =
        write_temp("repro_corrupt.json", R"({"degree": 1, "coeffs": ["1.0", "bad"]})");
    REQUIRE(run_cli("reproduce-all --poly " + corrupt).exit_code == 2);
    std::remove(corrupt.c_str());
}
