#include "scto/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scto/config.hpp"
#include "scto/io.hpp"
#include "scto/particles.hpp"
#include "scto/synchronization.hpp"
#include "scto/transfer.hpp"

namespace scto::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

struct RunContext {
  Config cfg;
  std::filesystem::path out;
};

std::string out_path(const RunContext& ctx, const std::string& name) {
  return (ctx.out / name).string();
}

void write_report(const RunContext& ctx, const json& body) {
  json doc = body;
  json resolved = json::object();
  for (const auto& [k, v] : ctx.cfg.entries()) resolved[k] = v;
  doc["config"] = resolved;
  std::ofstream os(out_path(ctx, "report.json"));
  if (!os) throw std::runtime_error("cannot write report.json in " + ctx.out.string());
  os << doc.dump(2) << "\n";
}

/// Reject configs carrying keys the command never reads; a typo in a key name
/// should fail loudly instead of silently running defaults.
void reject_unused(const Config& cfg) {
  auto leftover = cfg.unused_keys();
  if (!leftover.empty()) throw ConfigError("unknown config key: " + leftover[0]);
}

int grid_resolution(const Config& cfg, int fallback = 1024) {
  long m = cfg.get_int("grid.M", fallback);
  if (m < 8) throw ConfigError("grid.M must be at least 8");
  return static_cast<int>(m);
}

int cmd_validate_map(const RunContext& ctx) {
  std::string kind = ctx.cfg.get_string("map.kind");
  if (kind != "perturbed_linear") throw ConfigError("unknown map.kind: " + kind);
  int degree = static_cast<int>(ctx.cfg.get_int("map.degree"));
  double delta = ctx.cfg.get_double("map.delta", 0.0);
  reject_unused(ctx.cfg);

  ExpandingMap map = perturbed_linear_raw(degree, delta);
  MapValidationReport rep = validate(map);

  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}});
  write_report(ctx, {{"command", "validate-map"},
                     {"map", map.description},
                     {"omega", map.omega},
                     {"Omega", map.Omega},
                     {"all_pass", rep.all_pass()},
                     {"checks", checks}});
  if (!rep.all_pass()) {
    for (const auto& c : rep.checks)
      if (!c.pass) std::cerr << "map check failed: " << c.name << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_fixed_point(const RunContext& ctx) {
  ExpandingMap map = map_from_config(ctx.cfg);
  int m = grid_resolution(ctx.cfg);
  GridDensity d0 = density_from_config(ctx.cfg, m);
  double eps = ctx.cfg.get_double("eps");
  double tol = ctx.cfg.get_double("solver.tol", 1e-9);
  int max_iter = static_cast<int>(ctx.cfg.get_int("solver.max_iter", 500));
  reject_unused(ctx.cfg);
  if (eps < 0.0 || eps >= 1.0) throw ConfigError("eps must lie in [0, 1)");

  auto [fstar, rep] = fixed_point(eps, d0, map, tol, max_iter);

  write_density_csv(out_path(ctx, "density.csv"), ctx.cfg, fstar);
  {
    CsvWriter it(out_path(ctx, "iterations.csv"), ctx.cfg, {"n", "bv_distance"});
    for (std::size_t n = 0; n < rep.bv_distances.size(); ++n)
      it.row({std::to_string(n + 1), format_double(rep.bv_distances[n])});
  }
  NormReport nr = norms(fstar);
  write_report(ctx, {{"command", "fixed-point"},
                     {"eps", eps},
                     {"iterations", rep.iterations},
                     {"residual", rep.residual},
                     {"gamma_est", rep.gamma_est},
                     {"converged", rep.converged},
                     {"mass", fstar.mass()},
                     {"bv_norm", nr.bv}});
  if (!rep.converged) {
    std::cerr << "fixed-point iteration did not converge within " << max_iter
              << " iterations (residual " << rep.residual << ")\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

std::vector<double> eps_grid_from_config(const Config& cfg) {
  std::vector<double> grid;
  if (cfg.has("sweep.eps_list")) {
    std::istringstream in(cfg.get_string("sweep.eps_list"));
    std::string tok;
    while (std::getline(in, tok, ',')) grid.push_back(std::stod(tok));
  } else {
    double start = cfg.get_double("sweep.eps_start");
    double stop = cfg.get_double("sweep.eps_stop");
    double step = cfg.get_double("sweep.eps_step");
    if (step <= 0.0) throw ConfigError("sweep.eps_step must be positive");
    for (double e = start; e <= stop + 0.5 * step; e += step) grid.push_back(e);
  }
  if (grid.empty()) throw ConfigError("sweep produced an empty eps grid");
  return grid;
}

int cmd_sweep_eps(const RunContext& ctx) {
  ExpandingMap map = map_from_config(ctx.cfg);
  int m = grid_resolution(ctx.cfg);
  GridDensity d0 = density_from_config(ctx.cfg, m);
  std::vector<double> grid = eps_grid_from_config(ctx.cfg);
  double tol = ctx.cfg.get_double("solver.tol", 1e-9);
  int max_iter = static_cast<int>(ctx.cfg.get_int("solver.max_iter", 500));
  reject_unused(ctx.cfg);

  SweepReport rep = sweep_epsilon(grid, d0, map, tol, max_iter);

  {
    CsvWriter sw(out_path(ctx, "sweep.csv"),
                 ctx.cfg, {"eps", "converged", "iterations", "residual", "ratio"});
    for (std::size_t i = 0; i < rep.cells.size(); ++i) {
      std::string ratio =
          (i > 0 && rep.ratios[i - 1]) ? format_double(*rep.ratios[i - 1]) : "";
      sw.row({format_double(rep.cells[i].eps),
              rep.cells[i].report.converged ? "1" : "0",
              std::to_string(rep.cells[i].report.iterations),
              format_double(rep.cells[i].report.residual), ratio});
    }
  }
  bool all_converged = true;
  for (const auto& c : rep.cells) all_converged = all_converged && c.report.converged;
  json body = {{"command", "sweep-eps"},
               {"cells", rep.cells.size()},
               {"all_converged", all_converged},
               {"warm_cold_dev", rep.warm_cold_dev}};
  if (rep.K_est) body["K_est"] = *rep.K_est;
  write_report(ctx, body);
  if (!all_converged) {
    std::cerr << "sweep contains non-converged cells (see sweep.csv)\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int cmd_synchronize(const RunContext& ctx) {
  ExpandingMap map = map_from_config(ctx.cfg);
  int m = grid_resolution(ctx.cfg, 8192);
  GridDensity d0 = density_from_config(ctx.cfg, m);
  double eps = ctx.cfg.get_double("eps");
  int steps = static_cast<int>(ctx.cfg.get_int("sync.steps", 64));
  reject_unused(ctx.cfg);

  SyncHistory hist = evolve_tracking(eps, d0, map, steps);
  CirclePoint xstar = reconstruct_xstar(hist, map);
  std::vector<double> w1 = wasserstein_trajectory(hist, xstar, map);

  {
    CsvWriter sc(out_path(ctx, "sync.csv"), ctx.cfg,
                 {"n", "support_start", "support_length", "w1_to_dirac", "bound_qn"});
    for (std::size_t n = 0; n < hist.support_arcs.size(); ++n) {
      double qn = std::pow(hist.q, static_cast<double>(n));
      sc.row({std::to_string(n), format_double(hist.support_arcs[n].start.value),
              format_double(hist.support_arcs[n].length), format_double(w1[n]),
              format_double(qn * w1[0])});
    }
  }
  write_report(ctx, {{"command", "synchronize"},
                     {"eps", eps},
                     {"q", hist.q},
                     {"steps_taken", hist.steps_taken},
                     {"stop_reason", hist.stop_reason},
                     {"xstar", xstar.value},
                     {"final_support_length", hist.support_arcs.back().length}});
  return kExitOk;
}

int cmd_particles(const RunContext& ctx) {
  ExpandingMap map = map_from_config(ctx.cfg);
  int m = grid_resolution(ctx.cfg);
  GridDensity d0 = density_from_config(ctx.cfg, m);
  double eps = ctx.cfg.get_double("eps");
  long n_particles = ctx.cfg.get_int("particles.n");
  int steps = static_cast<int>(ctx.cfg.get_int("particles.steps", 5));
  std::uint64_t seed = static_cast<std::uint64_t>(ctx.cfg.get_int("seed", 1));
  reject_unused(ctx.cfg);
  if (n_particles < 1) throw ConfigError("particles.n must be positive");

  ParticleRunResult res = empirical_vs_continuum(d0, map, eps, steps,
                                                 static_cast<std::size_t>(n_particles), seed);

  {
    CsvWriter pc(out_path(ctx, "particles.csv"), ctx.cfg,
                 {"n", "w1_empirical_vs_continuum", "ensemble_diameter"});
    for (std::size_t n = 0; n < res.w1.size(); ++n)
      pc.row({std::to_string(n), format_double(res.w1[n]),
              format_double(res.diameter[n])});
  }
  double w1_max = 0.0;
  for (double w : res.w1) w1_max = std::max(w1_max, w);
  write_report(ctx, {{"command", "particles"},
                     {"eps", eps},
                     {"n_particles", n_particles},
                     {"steps", steps},
                     {"seed", res.seed},
                     {"w1_max", w1_max}});
  return kExitOk;
}

int dispatch(int (*cmd)(const RunContext&), const std::string& config_path,
             const std::string& out_dir) {
  try {
    RunContext ctx{Config::parse_file(config_path), out_dir};
    std::filesystem::create_directories(ctx.out);
    return cmd(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"self-consistent transfer operator experiments for coupled circle maps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;  // 0 = auto; computations are deterministic and K-invariant

  int (*selected)(const RunContext&) = nullptr;
  for (auto [name, fn, help] :
       {std::tuple{"validate-map", &cmd_validate_map, "check expansion assumptions"},
        std::tuple{"fixed-point", &cmd_fixed_point, "iterate F_eps to its fixed density"},
        std::tuple{"sweep-eps", &cmd_sweep_eps, "fixed points along an eps grid"},
        std::tuple{"synchronize", &cmd_synchronize, "strong-coupling support collapse"},
        std::tuple{"particles", &cmd_particles, "finite-N cross-validation"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (0 = auto)");
    sub->callback([fn, &selected] { selected = fn; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return dispatch(selected, config_path, out_dir);
}

}  // namespace scto::cli
