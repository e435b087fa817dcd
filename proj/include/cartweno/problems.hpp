#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cartweno/grid.hpp"
#include "cartweno/state.hpp"

namespace cartweno {

enum class ProblemKind { LinearAdvect, IsentropicVortex, NonlinearSmooth, Riemann2D };

/// Four constant states separated at (x_split, y_split). Quadrant numbering
/// is counter-clockwise from the upper right: 1 (x>xs, y>ys), 2 (x<xs,
/// y>ys), 3 (x<xs, y<ys), 4 (x>xs, y<ys).
struct RiemannSetup {
  std::string name;
  std::array<PrimitiveState, 4> quadrants{};
  double x_split = 0.5;
  double y_split = 0.5;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  double t_end = 0.0;
};

/// Reads an INI file with a [setup] section (x_split, y_split, t_end and
/// optional domain bounds) and sections [q1]..[q4] holding rho, u, v, p.
RiemannSetup load_riemann_setup(const std::filesystem::path& path);

/// Directory of the bundled data files.
std::filesystem::path default_data_dir();

struct Problem {
  ProblemKind kind = ProblemKind::LinearAdvect;
  std::string name;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  BoundaryCondition bc = BoundaryCondition::Periodic;
  double t_end = 1.0;
  double gamma = 1.4;
  std::optional<RiemannSetup> riemann;

  /// Pointwise initial data.
  [[nodiscard]] PrimitiveState initial(double x, double y) const;
  /// Square grid with n cells per axis on the problem domain.
  [[nodiscard]] GridSpec grid(int n, int ghost = 4) const;
};

/// Smooth problems: LinearAdvect on [0,1]^2 to t=1, IsentropicVortex on
/// [-7,7]^2 to t=14, NonlinearSmooth on [-1,1]^2 to t=0.1.
Problem make_problem(ProblemKind kind);
Problem make_riemann_problem(const RiemannSetup& setup);

/// "linear", "vortex", "smooth" or "riemann" (riemann loads the bundled
/// configuration 5 unless `riemann_file` is given).
Problem parse_problem(std::string_view text,
                      const std::optional<std::filesystem::path>& riemann_file = std::nullopt);
std::string to_string(ProblemKind kind);

/// Quadrature cell averages of the initial data. Throws GridError when the
/// grid does not cover the problem domain.
CellField init_problem(const Problem& problem, const GridSpec& spec);

/// Exact cell averages at time t: LinearAdvect at any t, IsentropicVortex at
/// multiples of its period 14. Throws Error otherwise.
CellField exact_solution(const Problem& problem, const GridSpec& spec, double t);

}  // namespace cartweno
