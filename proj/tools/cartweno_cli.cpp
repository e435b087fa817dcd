// Experiment driver: convergence studies, Riemann runs, method timing and
// RK stability regions.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartweno/config.hpp"
#include "cartweno/convergence.hpp"
#include "cartweno/emit.hpp"
#include "cartweno/euler.hpp"
#include "cartweno/parallel.hpp"
#include "cartweno/problems.hpp"
#include "cartweno/solver.hpp"

namespace cw = cartweno;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCheck = 4;

struct EocRange {
  double lo;
  double hi;
};

// Expected final EOC of the smooth studies, keyed by problem, order and
// method; used by --check.
std::optional<EocRange> expected_eoc(cw::ProblemKind p, cw::WenoOrder o, cw::Method m) {
  using cw::Method;
  using cw::ProblemKind;
  using cw::WenoOrder;
  const bool fifth = o == WenoOrder::Fifth;
  switch (p) {
    case ProblemKind::LinearAdvect:
      if (fifth) return m == Method::Method2 ? EocRange{3.8, 4.8} : EocRange{4.7, 5.3};
      if (m == Method::Method1) return EocRange{6.6, 7.3};
      if (m == Method::Method2) return EocRange{3.8, 4.5};
      return EocRange{6.0, 1e9};
    case ProblemKind::IsentropicVortex:
      if (fifth) return m == Method::Method1 ? EocRange{1.9, 2.9} : EocRange{4.0, 5.5};
      if (m == Method::Method1) return EocRange{-1e9, 2.5};
      if (m == Method::Method3) return EocRange{5.5, 1e9};
      return std::nullopt;
    case ProblemKind::NonlinearSmooth:
      if (!fifth) return std::nullopt;
      return m == Method::Method1 ? EocRange{1.8, 2.2} : EocRange{4.0, 1e9};
    default:
      return std::nullopt;
  }
}

std::string tag(const cw::ReconstructionScheme& s, cw::Method m) {
  return s.name() + "_" + cw::to_string(m);
}

int run_converge(const cw::RunConfig& cfg, bool check) {
  const cw::Problem problem = cw::resolve_problem(cfg);
  if (problem.kind == cw::ProblemKind::Riemann2D) {
    throw cw::ConfigError("converge needs a smooth problem (linear, vortex or smooth)");
  }
  const cw::ReconstructionScheme scheme = cw::resolve_scheme(cfg, problem);
  const cw::ButcherTableau tableau = cw::resolve_tableau(cfg, scheme);
  const double t_end = cfg.t_end.value_or(problem.t_end);

  cw::StudyOptions opts;
  opts.t_end = t_end;
  std::string ref = cfg.reference;
  if (ref == "auto") ref = problem.kind == cw::ProblemKind::NonlinearSmooth ? "refined" : "exact";
  std::optional<cw::CellField> reference;
  if (ref == "refined") {
    opts.policy = cw::ReferencePolicy::SelfRefined;
    const int n = cfg.reference_grid > 0 ? cfg.reference_grid : 4 * cfg.grids.back();
    std::cerr << "reference: z7 method3 rk7 on " << n << "^2\n";
    reference.emplace(cw::compute_reference(problem, n, t_end, cfg.cfl));
    opts.reference = &*reference;
  } else if (ref != "exact") {
    throw cw::ConfigError("reference must be auto, exact or refined");
  }
  opts.on_row = [](const cw::StudyRow& r) {
    std::cerr << "  " << r.grid << "^2: "
              << (r.l1_error ? std::to_string(*r.l1_error) : r.status) << " (" << r.wall_s
              << " s, " << r.steps << " steps)\n";
  };

  std::vector<cw::ConvergenceReport> reports;
  int status = 0;
  for (cw::Method m : cfg.methods) {
    const cw::SchemeConfig sc = cw::resolve_scheme_config(cfg, problem, m);
    std::cerr << problem.name << ": " << sc.describe() << " + " << tableau.name << '\n';
    reports.push_back(cw::run_convergence_study(problem, sc, tableau, cfg.grids, opts));
    const auto& rep = reports.back();
    cw::write_text(cfg.out / tag(scheme, m) / "report.csv", rep.to_csv());
    for (const auto& r : rep.rows) {
      if (r.failed()) status = kExitSolver;
    }
    if (check) {
      const auto range = expected_eoc(problem.kind, scheme.order, m);
      const auto last = rep.final_eoc();
      if (range && (!last || *last < range->lo || *last > range->hi)) {
        std::cerr << "check failed: " << cw::to_string(m) << " final EOC "
                  << (last ? std::to_string(*last) : "n/a") << " outside [" << range->lo << ", "
                  << range->hi << "]\n";
        if (status == 0) status = kExitCheck;
      }
    }
  }
  const std::string table = cw::format_table(reports);
  cw::write_text(cfg.out / "table.txt", table);
  std::cout << table;
  return status;
}

int run_riemann(const cw::RunConfig& cfg, bool grids_given) {
  const cw::Problem problem = cw::resolve_problem(cfg);
  const cw::ReconstructionScheme scheme = cw::resolve_scheme(cfg, problem);
  const cw::ButcherTableau tableau = cw::resolve_tableau(cfg, scheme);
  const double t_end = cfg.t_end.value_or(problem.t_end);
  const std::vector<int> grids = grids_given ? cfg.grids : std::vector<int>{128};
  for (int n : grids) {
    std::map<cw::Method, cw::CellField> results;
    for (cw::Method m : cfg.methods) {
      const cw::SchemeConfig sc = cw::resolve_scheme_config(cfg, problem, m);
      cw::CellField field = cw::init_problem(problem, problem.grid(n, sc.required_ghost()));
      const long long steps = cw::advance_inplace(field, t_end, sc, tableau);
      const std::string stem = problem.name + "_" + tag(scheme, m) + "_" + std::to_string(n);
      cw::emit_schlieren(field, cfg.out / (stem + ".pgm"));
      cw::emit_field_csv(field, cfg.out / ("field_" + stem + ".csv"), problem.gamma);
      std::cout << stem << ": " << steps << " steps to t = " << field.time() << '\n';
      results.emplace(m, std::move(field));
    }
    const auto base = results.find(cw::Method::Method1);
    if (base == results.end()) continue;
    const cw::GridSpec& spec = base->second.spec();
    for (const auto& [m, f] : results) {
      if (m == cw::Method::Method1) continue;
      cw::CellField other(spec);
      cw::CellField zero(spec);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          other.set_state(i, j, f.state(i, j));
          zero.set_state(i, j, cw::ConservedState{});
        }
      }
      const double diff = cw::l1_error(base->second, other, 0);
      const double norm = cw::l1_error(base->second, zero, 0);
      std::cout << "relative L1 density difference method1 vs " << cw::to_string(m) << ": "
                << diff / norm << '\n';
    }
  }
  return 0;
}

int run_perf(const cw::RunConfig& cfg, bool grids_given) {
  const cw::Problem problem = cw::resolve_problem(cfg);
  const int grid = grids_given ? cfg.grids.back() : 256;
  std::string table;
  std::string csv;
  const std::vector<std::string> schemes =
      cfg.scheme.empty() ? std::vector<std::string>{"z5", "z7"} : std::vector<std::string>{cfg.scheme};
  for (const auto& name : schemes) {
    cw::RunConfig c = cfg;
    c.scheme = name;
    const cw::SchemeConfig sc = cw::resolve_scheme_config(c, problem, cw::Method::Method1);
    const cw::ButcherTableau tableau = cw::resolve_tableau(c, sc.scheme);
    const cw::PerfReport rep =
        cw::perf_report(problem, sc, tableau, grid, cfg.perf_steps, cfg.perf_repetitions);
    table += rep.to_table() + "\n";
    csv += rep.to_csv();
  }
  cw::write_text(cfg.out / "perf.txt", table);
  cw::write_text(cfg.out / "perf.csv", csv);
  std::cout << table;
  return 0;
}

int run_stability(const cw::RunConfig& cfg) {
  cw::emit_stability_region(cw::tableau_rk5(), cfg.out / "stability_rk5.csv");
  cw::emit_stability_region(cw::tableau_rk7(), cfg.out / "stability_rk7.csv");
  std::cout << "wrote " << (cfg.out / "stability_rk5.csv").string() << " and "
            << (cfg.out / "stability_rk7.csv").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order finite volume WENO experiments for the 2D Euler equations"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::string problem;
  std::string scheme;
  std::string method;
  std::string flux;
  std::string grids;
  std::string integrator;
  std::string reference;
  std::string riemann_file;
  double cfl = 0.0;
  double t_end = 0.0;
  std::string out;
  int threads = 0;
  bool linear_weights = false;
  bool check = false;
  int steps = 0;
  int reps = 0;

  app.add_option("--config", config_file, "INI file with [problem] [scheme] [output] sections");
  auto* o_problem = app.add_option("--problem", problem, "linear | vortex | smooth | riemann");
  auto* o_scheme = app.add_option("--scheme", scheme, "js5 | z5 | js7 | z7");
  auto* o_method = app.add_option("--method", method, "1, 2, 3 or a list such as 1,3");
  auto* o_flux = app.add_option("--flux", flux, "lf | roe");
  auto* o_grids = app.add_option("--grids", grids, "doubling grid sizes, e.g. 32,64,128");
  auto* o_cfl = app.add_option("--cfl", cfl, "CFL number in (0, 1]");
  auto* o_tend = app.add_option("--t-end", t_end, "final time (default: problem's)");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_threads = app.add_option("--threads", threads, "worker threads");
  auto* o_lin = app.add_flag("--linear-weights", linear_weights, "use linear WENO weights (test mode)");
  auto* o_int = app.add_option("--integrator", integrator, "rk5 | rk7");
  auto* o_ref = app.add_option("--reference", reference, "auto | exact | refined");
  auto* o_rf = app.add_option("--riemann-file", riemann_file, "Riemann setup INI file");
  auto* o_steps = app.add_option("--steps", steps, "perf: RK steps per timing");
  auto* o_reps = app.add_option("--repetitions", reps, "perf: timed repetitions");

  auto* converge = app.add_subcommand("converge", "grid refinement study");
  converge->add_flag("--check", check, "exit 4 when a final EOC misses its expected range");
  app.add_subcommand("riemann", "2D Riemann problem runs with schlieren output");
  app.add_subcommand("perf", "runtime of methods 2 and 3 relative to method 1");
  app.add_subcommand("stability", "RK5/RK7 stability region boundaries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    cw::RunConfig cfg;
    if (!config_file.empty()) cw::load_run_config(config_file, cfg);
    if (*o_problem) cfg.problem = problem;
    if (*o_scheme) cfg.scheme = scheme;
    if (*o_method) cfg.methods = cw::parse_method_list(method);
    if (*o_flux) cfg.flux = flux;
    if (*o_grids) cfg.grids = cw::parse_int_list(grids);
    if (*o_cfl) cfg.cfl = cfl;
    if (*o_tend) cfg.t_end = t_end;
    if (*o_out) cfg.out = out;
    if (*o_threads) cfg.threads = threads;
    if (*o_lin) cfg.linear_weights = linear_weights;
    if (*o_int) cfg.integrator = integrator;
    if (*o_ref) cfg.reference = reference;
    if (*o_rf) cfg.riemann_file = riemann_file;
    if (*o_steps) cfg.perf_steps = steps;
    if (*o_reps) cfg.perf_repetitions = reps;
    if (cfg.threads < 1) throw cw::ConfigError("--threads must be at least 1");
    cw::set_thread_count(cfg.threads);
    const bool grids_given = *o_grids || !config_file.empty();

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "converge") return run_converge(cfg, check);
    if (sub == "riemann") {
      if (!*o_problem && config_file.empty()) cfg.problem = "riemann";
      if (!*o_method && config_file.empty()) cfg.methods = {cw::Method::Method1, cw::Method::Method2};
      return run_riemann(cfg, o_grids->count() > 0);
    }
    if (sub == "perf") {
      if (!*o_problem && config_file.empty()) cfg.problem = "vortex";
      return run_perf(cfg, grids_given);
    }
    return run_stability(cfg);
  } catch (const cw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
}
