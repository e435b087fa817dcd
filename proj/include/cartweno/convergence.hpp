#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartweno/problems.hpp"
#include "cartweno/rk.hpp"
#include "cartweno/solver.hpp"

namespace cartweno {

/// log(e_m / e_2m) / log 2. Throws Error unless both errors are positive.
double eoc(double coarse_error, double fine_error);

enum class ReferencePolicy { Exact, SelfRefined };

struct StudyRow {
  int grid = 0;
  std::optional<double> l1_error;  // empty when the run failed
  std::optional<double> eoc;       // against the previous row
  double wall_s = 0.0;
  long long steps = 0;
  std::string status = "ok";

  [[nodiscard]] bool failed() const noexcept { return !l1_error.has_value(); }
  friend bool operator==(const StudyRow&, const StudyRow&) = default;
};

struct ConvergenceReport {
  std::string problem;
  std::string scheme;
  std::string method;
  std::string flux;
  std::string integrator;
  double cfl = 0.0;
  double t_end = 0.0;
  std::vector<StudyRow> rows;

  /// EOC values of rows 1..n-1 (empty optional where a neighbour failed).
  [[nodiscard]] std::vector<std::optional<double>> eocs() const;
  /// Last available EOC, if any.
  [[nodiscard]] std::optional<double> final_eoc() const;
  [[nodiscard]] std::optional<double> error_at(int grid) const;

  /// Metadata as "# key = value" lines, then columns
  /// grid,l1_error,eoc,wall_s,steps,status with round-trip precision.
  [[nodiscard]] std::string to_csv() const;
  static ConvergenceReport from_csv(std::string_view text);
  [[nodiscard]] std::string to_table() const;

  friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

/// Side-by-side table of several studies over the same grids (one column
/// pair per report), in the layout of a published convergence table.
std::string format_table(std::span<const ConvergenceReport> reports);

struct StudyOptions {
  ReferencePolicy policy = ReferencePolicy::Exact;
  /// Final time; defaults to the problem's.
  std::optional<double> t_end;
  /// SelfRefined only: reference field at t_end on a grid whose size is a
  /// multiple of every study grid. Computed by compute_reference if null.
  const CellField* reference = nullptr;
  int reference_grid = 0;
  /// Per-grid step limit; a grid exceeding it is recorded as failed.
  long long max_steps = AdvanceOptions{}.max_steps;
  /// Called after each grid finishes.
  std::function<void(const StudyRow&)> on_row;
};

/// Z7 + Method3 + RK7 reference solution on an n x n grid.
CellField compute_reference(const Problem& problem, int n, double t_end, double cfl = 0.9);

/// Runs `config` on each grid (which must double) and measures the L1
/// density error against the reference. A failing grid is recorded with
/// its message and the study continues.
ConvergenceReport run_convergence_study(const Problem& problem, SchemeConfig config,
                                        const ButcherTableau& tableau, std::span<const int> grids,
                                        const StudyOptions& options = {});

struct PerfRow {
  Method method = Method::Method1;
  std::vector<double> samples;
  double median_s = 0.0;
  double normalized = 0.0;
};

struct PerfReport {
  std::string problem;
  std::string scheme;
  std::string integrator;
  int grid = 0;
  int steps = 0;
  int threads = 1;
  std::vector<PerfRow> rows;

  [[nodiscard]] std::string to_csv() const;
  [[nodiscard]] std::string to_table() const;
  [[nodiscard]] const PerfRow& row(Method m) const;
};

/// Wall time of `steps` RK steps for Methods 1, 2, 3 with identical dt,
/// after one discarded warm-up step; medians over `repetitions`, normalised
/// by Method1. Repetitions interleave the methods.
PerfReport perf_report(const Problem& problem, SchemeConfig config, const ButcherTableau& tableau,
                       int grid, int steps, int repetitions = 3);

}  // namespace cartweno
