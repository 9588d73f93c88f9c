// End-to-end checks of the command-line binary: subcommand routing, exit
// codes (0 ok, 1 numerical failure, 2 config error), stderr diagnostics that
// name the offending field, the wrote notes, and byte-stable reruns.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cascade/rate_table.hpp"
#include "cascade/rates.hpp"

using namespace cascade;
namespace fs = std::filesystem;

namespace {

const double pi = std::acos(-1.0);

fs::path test_root() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cascade_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = test_root() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

int run_cli(const std::string& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  const fs::path out_file = test_root() / "stdout.txt";
  const fs::path err_file = test_root() / "stderr.txt";
  const std::string command = std::string("\"") + CASCADE_CLI_PATH + "\" " + args + " > \"" +
                              out_file.string() + "\" 2> \"" + err_file.string() + "\"";
  const int status = std::system(command.c_str());
  if (out_text) *out_text = read_file(out_file);
  if (err_text) *err_text = read_file(err_file);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// The trajectory config used for the happy paths; drives off so the
// propagation pattern is deterministic from the initial excitation alone.
fs::path populations_config() {
  static const fs::path path = write_file("populations.json", R"({
    "schema": 1, "scenario": "populations",
    "chain": {"n_atoms": 4, "step": 0.9},
    "environment": {"model": {"kind": "spp_chain"}, "mode": "unidirectional"},
    "initial_state": "gegg",
    "drive": {"gamma_in": 0, "gamma_out": 0},
    "time": {"t_end": 4, "samples": 41}
  })");
  return path;
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
  std::string out;
  CHECK(run_cli("--version", &out) == 0);
  CHECK(out == "cascade 0.1.0\n");

  CHECK(run_cli("--help", &out) == 0);
  CHECK(out.find("simulate") != std::string::npos);
  CHECK(out.find("validate") != std::string::npos);
  CHECK(out.find("scan") != std::string::npos);
}

TEST_CASE("simulate writes the scenario artifacts and reports them") {
  const fs::path out_dir = test_root() / "sim_out";
  std::string out;
  const int code = run_cli("simulate \"" + populations_config().string() +
                               "\" --output-dir \"" + out_dir.string() + "\"",
                           &out);
  CHECK(code == 0);
  CHECK(out == "wrote " + (out_dir / "populations.csv").string() + "\n" + "wrote " +
                   (out_dir / "manifest.json").string() + "\n");
  REQUIRE(fs::exists(out_dir / "populations.csv"));
  REQUIRE(fs::exists(out_dir / "manifest.json"));

  const std::string csv = read_file(out_dir / "populations.csv");
  CHECK(csv.rfind("time,p1,p2,p3,p4\n", 0) == 0);

  // --quiet suppresses the notes but not the files.
  const fs::path quiet_dir = test_root() / "sim_quiet";
  CHECK(run_cli("simulate \"" + populations_config().string() + "\" --output-dir \"" +
                    quiet_dir.string() + "\" --quiet",
                &out) == 0);
  CHECK(out.empty());
  CHECK(fs::exists(quiet_dir / "populations.csv"));

  // Reruns through the binary are byte-identical.
  const std::string manifest_first = read_file(out_dir / "manifest.json");
  CHECK(run_cli("simulate \"" + populations_config().string() + "\" --output-dir \"" +
                    out_dir.string() + "\" --quiet") == 0);
  CHECK(read_file(out_dir / "populations.csv") == csv);
  CHECK(read_file(out_dir / "manifest.json") == manifest_first);
}

TEST_CASE("scan runs a sweep and freezes its numbers") {
  const fs::path config = write_file("scan_rec.json", R"({
    "schema": 1, "scenario": "gamma12_scan",
    "chain": {"n_atoms": 2},
    "environment": {"model": {"kind": "quadrature"}, "mode": "reciprocal"},
    "grid": {"values": [0.5, 1.0]}
  })");
  const fs::path out_dir = test_root() / "scan_out";
  CHECK(run_cli("scan \"" + config.string() + "\" --output-dir \"" + out_dir.string() +
                "\" --quiet") == 0);

  const std::string csv = read_file(out_dir / "gamma12_scan.csv");
  REQUIRE(csv.rfind("gamma12_ratio,chi_stationary,warnings\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);
  CHECK(std::stod(line.substr(line.find(',') + 1)) ==
        doctest::Approx(0.0314465409).epsilon(1e-9));
  std::getline(lines, line);
  CHECK(std::stod(line.substr(line.find(',') + 1)) ==
        doctest::Approx(5.0 / 34.0).epsilon(1e-9));

  // The sweep reruns byte for byte as well.
  CHECK(run_cli("scan \"" + config.string() + "\" --output-dir \"" + out_dir.string() +
                "\" --quiet") == 0);
  CHECK(read_file(out_dir / "gamma12_scan.csv") == csv);
}

TEST_CASE("subcommand and scenario kind must agree") {
  std::string err;
  CHECK(run_cli("scan \"" + populations_config().string() + "\"", nullptr, &err) == 2);
  CHECK(err == "config error: scenario populations runs under simulate, not scan\n");

  const fs::path sweep = write_file("mismatch_scan.json", R"({
    "schema": 1, "scenario": "gamma12_scan",
    "chain": {"n_atoms": 2},
    "environment": {"model": {"kind": "quadrature"}, "mode": "unidirectional"}
  })");
  CHECK(run_cli("simulate \"" + sweep.string() + "\"", nullptr, &err) == 2);
  CHECK(err == "config error: scenario gamma12_scan runs under scan, not simulate\n");
}

TEST_CASE("config errors exit 2 and name the problem") {
  std::string err;

  const fs::path garbled = write_file("garbled.json", "{ not json");
  CHECK(run_cli("simulate \"" + garbled.string() + "\"", nullptr, &err) == 2);
  CHECK(err.rfind("config error: " + garbled.string() + ": ", 0) == 0);
  CHECK(err.find("parse error") != std::string::npos);

  const fs::path incomplete = write_file("incomplete.json", R"({
    "schema": 1, "scenario": "populations", "chain": {},
    "environment": {"model": {"kind": "quadrature", "X": 1.0}}
  })");
  CHECK(run_cli("simulate \"" + incomplete.string() + "\"", nullptr, &err) == 2);
  CHECK(err == "config error: missing field chain.n_atoms\n");

  const fs::path unknown = write_file("unknown.json", R"({
    "schema": 1, "scenario": "populations", "chain": {"n_atoms": 2},
    "environment": {"model": {"kind": "quadrature", "X": 1.0}},
    "fudge": true
  })");
  CHECK(run_cli("simulate \"" + unknown.string() + "\"", nullptr, &err) == 2);
  CHECK(err == "config error: unknown field fudge\n");

  const fs::path doubled = write_file("doubled.json", R"({
    "schema": 1, "scenario": "populations", "chain": {"n_atoms": 2},
    "environment": {"model": {"kind": "quadrature", "X": 1.0}, "rate_table": "r.csv"}
  })");
  CHECK(run_cli("simulate \"" + doubled.string() + "\"", nullptr, &err) == 2);
  CHECK(err ==
        "config error: environment must set exactly one of environment.model and "
        "environment.rate_table\n");

  const fs::path missing = test_root() / "no_such_config.json";
  CHECK(run_cli("simulate \"" + missing.string() + "\"", nullptr, &err) == 2);
  CHECK(err == "config error: cannot open config file " + missing.string() + "\n");

  // Command-line misuse lands on the same exit code.
  CHECK(run_cli("simulate", nullptr, &err) == 2);
  CHECK(err.rfind("config error: ", 0) == 0);
  CHECK(run_cli("frobnicate", nullptr, &err) == 2);
  CHECK(run_cli("", nullptr, &err) == 2);
}

TEST_CASE("numerical failures exit 1") {
  // An unpumped chain has no stationary efficiency to report.
  const fs::path config = write_file("unpumped_eff.json", R"({
    "schema": 1, "scenario": "efficiency_dynamics",
    "chain": {"n_atoms": 2},
    "environment": {"model": {"kind": "quadrature", "X": 1.0,
                              "phi": 1.5707963267948966},
                    "mode": "unidirectional"},
    "drive": {"gamma_in": 0, "gamma_out": 1.5},
    "time": {"t_end": 1, "samples": 3}
  })");
  const fs::path out_dir = test_root() / "unpumped_out";
  std::string err;
  CHECK(run_cli("simulate \"" + config.string() + "\" --output-dir \"" + out_dir.string() +
                    "\" --quiet",
                nullptr, &err) == 1);
  CHECK(err ==
        "numerical failure: scenario efficiency_dynamics: stationary efficiency undefined: "
        "pump flux 0.000000\n");
}

TEST_CASE("validate prints the resolved report") {
  std::string out;
  CHECK(run_cli("validate \"" + populations_config().string() + "\"", &out) == 0);
  CHECK(out ==
        "scenario: populations\n"
        "chain: n_atoms=4, omega0=1, step=0.9\n"
        "environment: unidirectional, bias downstream, gamma_in=0, gamma_out=0\n"
        "initial_state: gegg\n"
        "time: t_end=4, samples=41\n"
        "rates: no findings\n");

  std::string err;
  const fs::path broken = write_file("validate_broken.json", R"({
    "schema": 1, "scenario": "phi_scan", "chain": {"n_atoms": 2},
    "environment": {"model": {"kind": "quadrature", "X": 1.0, "phi": 0.5}}
  })");
  CHECK(run_cli("validate \"" + broken.string() + "\"", nullptr, &err) == 2);
  CHECK(err ==
        "config error: field environment.model.phi does not apply: the phi_scan grid sets "
        "the phase\n");
}

TEST_CASE("rate tables plug into configs") {
  QuadratureModel model;
  model.X = 1.0;
  model.phi = pi / 2.0;
  const RateSet rates = quadrature_rate_set(model, CouplingMode::unidirectional, 1.5, 1.5);
  const fs::path table = test_root() / "table.csv";
  save_rate_table(rates, table);

  const fs::path config = write_file("table_config.json",
      R"({"schema": 1, "scenario": "populations", "chain": {"n_atoms": 2},
          "environment": {"rate_table": ")" + table.string() + R"("},
          "time": {"t_end": 1, "samples": 3}})");
  const fs::path out_dir = test_root() / "table_out";
  CHECK(run_cli("simulate \"" + config.string() + "\" --output-dir \"" + out_dir.string() +
                "\" --quiet") == 0);
  CHECK(fs::exists(out_dir / "populations.csv"));

  std::string err;
  const fs::path mismatched = write_file("table_mismatch.json",
      R"({"schema": 1, "scenario": "populations", "chain": {"n_atoms": 3},
          "environment": {"rate_table": ")" + table.string() + R"("}})");
  CHECK(run_cli("simulate \"" + mismatched.string() + "\"", nullptr, &err) == 2);
  CHECK(err == "config error: rate table " + table.string() +
                   " is for 2 atoms but chain.n_atoms is 3\n");
}
