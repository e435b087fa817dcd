#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartweno/problems.hpp"
#include "cartweno/rk.hpp"
#include "cartweno/solver.hpp"

namespace cartweno {

/// Settings of one CLI run. Defaults match the smooth convergence studies.
struct RunConfig {
  // [problem]
  std::string problem = "linear";
  std::optional<std::filesystem::path> riemann_file;
  std::optional<double> t_end;
  std::vector<int> grids = {32, 64, 128};
  std::string reference = "auto";  // auto | exact | refined
  int reference_grid = 0;          // 0: four times the finest grid
  // [scheme]
  std::string scheme;  // empty: z5 for smooth problems, js5 for riemann
  std::vector<Method> methods = {Method::Method1, Method::Method2, Method::Method3};
  std::string flux;        // empty: lf for smooth problems, roe for riemann
  std::string integrator;  // empty: rk5 for fifth order, rk7 for seventh
  double cfl = 0.9;
  bool linear_weights = false;
  // [output]
  std::filesystem::path out = "out";
  int threads = 1;
  int perf_steps = 5;
  int perf_repetitions = 3;
};

/// Reads `key = value` lines in sections [problem], [scheme], [output] into
/// `cfg`, leaving unspecified keys untouched. Unknown keys are rejected.
void load_run_config(const std::filesystem::path& path, RunConfig& cfg);

std::vector<int> parse_int_list(std::string_view text);
std::vector<Method> parse_method_list(std::string_view text);

/// Resolved pieces of a RunConfig (defaults filled in, names parsed).
Problem resolve_problem(const RunConfig& cfg);
ReconstructionScheme resolve_scheme(const RunConfig& cfg, const Problem& problem);
SchemeConfig resolve_scheme_config(const RunConfig& cfg, const Problem& problem, Method method);
ButcherTableau resolve_tableau(const RunConfig& cfg, const ReconstructionScheme& scheme);

}  // namespace cartweno
