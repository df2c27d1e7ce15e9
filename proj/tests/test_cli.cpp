#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scto/cli.hpp"
#include "scto/config.hpp"

namespace fs = std::filesystem;

namespace {

fs::path make_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "scto_cli_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  fs::path p = dir / "run.cfg";
  std::ofstream os(p);
  os << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(std::vector<std::string> args) { return scto::cli::run(args); }

}  // namespace

TEST_CASE("config parser essentials") {
  using scto::Config;
  Config cfg = Config::parse_text("# comment\nmap.kind = perturbed_linear\n"
                                  "map.degree=2\n  eps = 0.05  \n");
  CHECK(cfg.get_string("map.kind") == "perturbed_linear");
  CHECK(cfg.get_int("map.degree") == 2);
  CHECK(cfg.get_double("eps") == doctest::Approx(0.05));
  CHECK(cfg.get_double("missing", 1.5) == 1.5);
  CHECK(cfg.unused_keys().empty());

  CHECK_THROWS_WITH_AS(Config::parse_text("a.b = 1\na.b = 2\n"),
                       doctest::Contains("duplicate"), scto::ConfigError);
  CHECK_THROWS_WITH_AS(Config::parse_text("no equals sign here\n"),
                       doctest::Contains("line 1"), scto::ConfigError);
  CHECK_THROWS_WITH_AS(Config::parse_text("eps = abc\n").get_double("eps"),
                       doctest::Contains("eps"), scto::ConfigError);
  Config partial = Config::parse_text("eps = 0.1\nextra.key = 3\n");
  partial.get_double("eps");
  REQUIRE(partial.unused_keys().size() == 1);
  CHECK(partial.unused_keys()[0] == "extra.key");
}

TEST_CASE("validate-map: doubling passes, inadmissible map fails") {
  fs::path dir = make_dir("validate_ok");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0.0\n");
  CHECK(run_cli({"validate-map", "--config", cfg.string(),
                 "--out", dir.string()}) == 0);
  std::string report = slurp(dir / "report.json");
  CHECK(report.find("\"all_pass\": true") != std::string::npos);
  CHECK(report.find("map.degree") != std::string::npos);  // resolved config embedded

  fs::path bad_dir = make_dir("validate_bad");
  fs::path bad = write_config(bad_dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0.15\n");
  CHECK(run_cli({"validate-map", "--config", bad.string(),
                 "--out", bad_dir.string()}) == 2);
  CHECK(slurp(bad_dir / "report.json").find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("fixed-point: doubling converges to the constant density") {
  fs::path dir = make_dir("fixed_point");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0\n"
      "grid.M = 256\ndensity.kind = trig\ndensity.a = 0.2\neps = 0.05\n");
  REQUIRE(run_cli({"fixed-point", "--config", cfg.string(),
                   "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "density.csv"));
  CHECK(fs::exists(dir / "iterations.csv"));
  std::string report = slurp(dir / "report.json");
  CHECK(report.find("\"converged\": true") != std::string::npos);

  // emitted density is the constant 1 within tolerance
  std::ifstream in(dir / "density.csv");
  std::string line;
  int data_rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    double f = std::stod(line.substr(line.find(',') + 1));
    CHECK(f == doctest::Approx(1.0).epsilon(1e-6));
    ++data_rows;
  }
  CHECK(data_rows == 256);
}

TEST_CASE("re-running a command byte-reproduces every output") {
  std::string text =
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0.05\n"
      "grid.M = 256\ndensity.kind = constant\neps = 0.02\nsolver.tol = 1e-9\n";
  fs::path a = make_dir("repro_a");
  fs::path b = make_dir("repro_b");
  REQUIRE(run_cli({"fixed-point", "--config", write_config(a, text).string(),
                   "--out", a.string()}) == 0);
  REQUIRE(run_cli({"fixed-point", "--config", write_config(b, text).string(),
                   "--out", b.string()}) == 0);
  for (const char* f : {"density.csv", "iterations.csv", "report.json"})
    CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("sweep-eps emits the per-cell table and the K estimate") {
  fs::path dir = make_dir("sweep");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0.05\n"
      "grid.M = 256\ndensity.kind = constant\n"
      "sweep.eps_list = 0,0.01,0.02\n");
  REQUIRE(run_cli({"sweep-eps", "--config", cfg.string(),
                   "--out", dir.string()}) == 0);
  std::string table = slurp(dir / "sweep.csv");
  CHECK(table.find("eps,converged,iterations,residual,ratio") != std::string::npos);
  CHECK(slurp(dir / "report.json").find("K_est") != std::string::npos);
}

TEST_CASE("synchronize: hypothesis violation exits 2 with the threshold") {
  fs::path dir = make_dir("sync_reject");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0\n"
      "grid.M = 1024\ndensity.kind = bump\ndensity.center = 0.5\n"
      "density.radius = 0.1\neps = 0.4\n");
  CHECK(run_cli({"synchronize", "--config", cfg.string(),
                 "--out", dir.string()}) == 2);
}

TEST_CASE("synchronize: strong coupling writes the contraction table") {
  fs::path dir = make_dir("sync_ok");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0\n"
      "grid.M = 2048\ndensity.kind = bump\ndensity.center = 0.5\n"
      "density.radius = 0.15\neps = 0.8\n");
  REQUIRE(run_cli({"synchronize", "--config", cfg.string(),
                   "--out", dir.string()}) == 0);
  std::string table = slurp(dir / "sync.csv");
  CHECK(table.find("n,support_start,support_length,w1_to_dirac,bound_qn") !=
        std::string::npos);
  std::string report = slurp(dir / "report.json");
  auto doc = nlohmann::json::parse(report);
  CHECK(doc["q"].get<double>() == doctest::Approx(0.4));
  CHECK(doc["stop_reason"] == "resolution floor");
}

TEST_CASE("particles subcommand writes the lockstep comparison") {
  fs::path dir = make_dir("particles");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0\n"
      "grid.M = 512\ndensity.kind = trig\ndensity.a = 0.2\n"
      "eps = 0.1\nparticles.n = 5000\nparticles.steps = 3\nseed = 4\n");
  REQUIRE(run_cli({"particles", "--config", cfg.string(),
                   "--out", dir.string()}) == 0);
  std::string table = slurp(dir / "particles.csv");
  CHECK(table.find("w1_empirical_vs_continuum") != std::string::npos);
  // header comments + column header + 4 data rows (initial state + 3 steps)
  int rows = 0;
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line[0] != 'n') ++rows;
  CHECK(rows == 4);
}

TEST_CASE("malformed configs exit 2 naming the offending key") {
  fs::path dir = make_dir("bad_cfg");
  // unknown key
  fs::path cfg1 = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\ngrid.M = 256\n"
      "density.kind = constant\neps = 0.05\nsolvr.tol = 1e-9\n");
  CHECK(run_cli({"fixed-point", "--config", cfg1.string(),
                 "--out", dir.string()}) == 2);
  // missing required key
  fs::path cfg2 = write_config(dir, "map.kind = perturbed_linear\n");
  CHECK(run_cli({"fixed-point", "--config", cfg2.string(),
                 "--out", dir.string()}) == 2);
  // eps out of range
  fs::path cfg3 = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\ngrid.M = 256\n"
      "density.kind = constant\neps = 1.5\n");
  CHECK(run_cli({"fixed-point", "--config", cfg3.string(),
                 "--out", dir.string()}) == 2);
  // missing file
  CHECK(run_cli({"fixed-point", "--config", (dir / "absent.cfg").string(),
                 "--out", dir.string()}) == 2);
}

TEST_CASE("non-convergence exits 3 but still writes the partial report") {
  fs::path dir = make_dir("no_convergence");
  fs::path cfg = write_config(dir,
      "map.kind = perturbed_linear\nmap.degree = 2\nmap.delta = 0.05\n"
      "grid.M = 256\ndensity.kind = trig\ndensity.a = 0.3\n"
      "eps = 0.02\nsolver.max_iter = 2\n");
  CHECK(run_cli({"fixed-point", "--config", cfg.string(),
                 "--out", dir.string()}) == 3);
  CHECK(slurp(dir / "report.json").find("\"converged\": false") != std::string::npos);
  CHECK(fs::exists(dir / "density.csv"));
}
