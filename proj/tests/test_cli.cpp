#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sblab/cli.hpp"
#include "sblab/io.hpp"

using namespace sblab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kRefConfig = R"({
  "params": {"e1": 2.5, "m": 1.0, "lambda_uv": 2.0, "g": 0.1},
  "profile": "dynamic",
  "packets": [{"type": "bump", "support": [2.0, 2.6], "amplitude": 1.0}],
  "survival": {"t_max": 10.0, "n_times": 21},
  "kernel": {"r_min": 1.8, "r_max": 3.0, "n_points": 25}
})";

fs::path make_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("sblab_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << text;
    return p;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"sblab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config validation: unknown keys are rejected with a pointer") {
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.1}, "tipo": 1})"),
                         doctest::Contains("$.tipo"), ConfigError);
    CHECK_THROWS_WITH_AS(io::parse_config(R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.1, "mass": 2}})"),
                         doctest::Contains("params.mass"), ConfigError);
    CHECK_THROWS_AS(io::parse_config("{"), ConfigError);
    CHECK_THROWS_AS(io::parse_config(R"({"params": {"e1": 2.5}})"), ConfigError);
}

TEST_CASE("config: packets, profile and quadrature blocks") {
    const auto cfg = io::parse_config(kRefConfig);
    CHECK(cfg.params.g == 0.1);
    CHECK(cfg.profile.name == "dynamic");
    CHECK(cfg.profile.n_modes == 200);
    REQUIRE(cfg.packets.size() == 1);
    CHECK(cfg.packets[0].lo == 2.0);
    CHECK(cfg.mourre.z == 2.5);
    CHECK_FALSE(cfg.config_hash.empty());
}

TEST_CASE("resonance command emits the level-shift report") {
    const auto dir = make_dir("resonance");
    const auto cfgp = write_config(dir, kRefConfig);
    CHECK(run_cli({"resonance", "--config", cfgp.string(), "--out",
                   (dir / "out").string()}) == 0);
    const auto doc = json::parse(slurp(dir / "out" / "resonance.json"));
    CHECK(doc["lambda1_tilde"][1].get<double>() < 0.0);
    CHECK(doc["theta0"].get<double>() == doctest::Approx(2.08577).epsilon(1e-4));
    CHECK(doc["decay_rate"].get<double>() > 0.0);
    CHECK(doc.contains("config_hash"));
    CHECK(fs::exists(dir / "out" / "resonance_manifest.json"));
}

TEST_CASE("resonance command: free coupling gives zero decay rate") {
    const auto dir = make_dir("resonance0");
    const auto cfgp = write_config(dir, R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.0}})");
    CHECK(run_cli({"resonance", "--config", cfgp.string(), "--out",
                   (dir / "out").string()}) == 0);
    const auto doc = json::parse(slurp(dir / "out" / "resonance.json"));
    CHECK(doc["decay_rate"].get<double>() == 0.0);
}

TEST_CASE("survival command: analytic-only CSV has empty oracle columns") {
    const auto dir = make_dir("survival");
    const auto cfgp = write_config(dir, kRefConfig);
    CHECK(run_cli({"survival", "--config", cfgp.string(), "--out",
                   (dir / "out").string()}) == 0);
    const auto text = slurp(dir / "out" / "survival.csv");
    CHECK(text.find("# config_hash=") == 0);
    CHECK(text.find("t,analytic_re,analytic_im,oracle_re,oracle_im,abs_err") !=
          std::string::npos);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line); // hash
    std::getline(lines, line); // header
    std::getline(lines, line); // t = 0
    CHECK(line.rfind("0,1,", 0) == 0);
    CHECK(line.substr(line.size() - 3) == ",,,");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 20);
}

TEST_CASE("kernel command: free coupling gives the all-zero profile") {
    const auto dir = make_dir("kernel0");
    const auto cfgp = write_config(dir, R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.0}, "kernel": {"r_min": 1.8, "r_max": 3.0, "n_points": 9}})");
    CHECK(run_cli({"kernel", "--config", cfgp.string(), "--out",
                   (dir / "out").string()}) == 0);
    std::istringstream lines(slurp(dir / "out" / "kernel.csv"));
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find(",0,0,0") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 9);
}

TEST_CASE("survival command: oracle columns and eigenvalue dump") {
    const auto dir = make_dir("survival_oracle");
    const auto cfgp = write_config(dir, R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.1}, "profile": "custom",
        "grid": {"modes": 24, "k_max": 6.0, "n_max": 1},
        "survival": {"t_max": 5.0, "n_times": 11, "oracle": true,
                     "dump_eigenvalues": true}})");
    CHECK(run_cli({"survival", "--config", cfgp.string(), "--out",
                   (dir / "out").string()}) == 0);
    std::istringstream lines(slurp(dir / "out" / "survival.csv"));
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find(",,") == std::string::npos); // oracle columns filled
        ++rows;
    }
    CHECK(rows == 11);

    std::istringstream ev(slurp(dir / "out" / "eigenvalues.csv"));
    std::getline(ev, line);
    std::getline(ev, line);
    CHECK(line == "index,energy");
    int evrows = 0;
    while (std::getline(ev, line)) ++evrows;
    CHECK(evrows == 2 * (1 + 24));
}

TEST_CASE("groundstate command emits one row per sweep point") {
    const auto dir = make_dir("groundstate");
    const auto cfgp = write_config(dir, R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.05}, "profile": "custom",
        "grid": {"modes": 16, "k_max": 6.0, "n_max": 2},
        "groundstate": {"g_sweep": [0.02, 0.04, 0.08]}})");
    CHECK(run_cli({"groundstate", "--config", cfgp.string(), "--out",
                   (dir / "out").string()}) == 0);
    std::istringstream lines(slurp(dir / "out" / "groundstate.csv"));
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "g,lambda0_num,minus_g2_gamma0,residual");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("exit codes: missing config file and malformed config") {
    const auto dir = make_dir("errors");
    CHECK(run_cli({"resonance", "--config", (dir / "nope.json").string()}) == 2);
    const auto bad = write_config(dir, R"({"params": {"e1": 2.5, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.1}, "unknown_key": true})");
    CHECK(run_cli({"resonance", "--config", bad.string(), "--out",
                   (dir / "out").string()}) == 2);
    // parameter validation happens while loading the config
    const auto gap = write_config(dir, R"({"params": {"e1": 3.0, "m": 1.0,
        "lambda_uv": 2.0, "g": 0.1}})");
    CHECK(run_cli({"resonance", "--config", gap.string(), "--out",
                   (dir / "out").string()}) == 2);
}

TEST_CASE("json format variant") {
    const auto dir = make_dir("jsonfmt");
    const auto cfgp = write_config(dir, kRefConfig);
    CHECK(run_cli({"kernel", "--config", cfgp.string(), "--out", (dir / "out").string(),
                   "--format", "json"}) == 0);
    const auto doc = json::parse(slurp(dir / "out" / "kernel.json"));
    CHECK(doc["columns"].size() == 4);
    CHECK(doc["rows"].size() == 25);
}

TEST_CASE("determinism: two runs produce byte-identical result files") {
    const auto dir = make_dir("determinism");
    const auto cfgp = write_config(dir, kRefConfig);
    for (const std::string cmd : {"resonance", "kernel", "survival"}) {
        CHECK(run_cli({cmd, "--config", cfgp.string(), "--out", (dir / "a").string()}) == 0);
        CHECK(run_cli({cmd, "--config", cfgp.string(), "--out", (dir / "b").string()}) == 0);
    }
    for (const auto& name : {"resonance.json", "kernel.csv", "survival.csv"})
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
}
