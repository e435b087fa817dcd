#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "cartweno/grid.hpp"
#include "cartweno/rk.hpp"
#include "cartweno/transform.hpp"
#include "cartweno/weno.hpp"

namespace cartweno {

/// Method1: fluxes from interface averages (standard dimension-by-dimension).
/// Method2: midpoint values and averaged fluxes via the h^2 transform.
/// Method3: same with the h^2 + h^4 transform.
enum class Method { Method1 = 1, Method2 = 2, Method3 = 3 };

enum class FluxKind { LaxFriedrichs, RoeHH };

/// Lax-Friedrichs dissipation speed: Local takes max(|u_n| + c) of the two
/// interface states, Global the maximum over all cells of the stage.
enum class AlphaScope { Local, Global };

struct SchemeConfig {
  ReconstructionScheme scheme{};
  Method method = Method::Method1;
  FluxKind flux = FluxKind::LaxFriedrichs;
  AlphaScope alpha = AlphaScope::Local;
  double cfl = 0.9;
  BoundaryCondition bc_x = BoundaryCondition::Periodic;
  BoundaryCondition bc_y = BoundaryCondition::Periodic;
  double gamma = 1.4;

  /// Transform applied across interfaces; none for Method1.
  [[nodiscard]] std::optional<TransformOrder> transform_order() const noexcept;
  /// Transverse widening of the stencil by the point-value and flux
  /// transforms together: 0, 2 or 4.
  [[nodiscard]] int transverse_width() const noexcept;
  /// Ghost layers needed: max(r, transverse_width()).
  [[nodiscard]] int required_ghost() const noexcept;
  /// Throws ConfigError on cfl outside (0, 1] or gamma <= 1.
  void validate() const;
  [[nodiscard]] std::string describe() const;
};

Method parse_method(std::string_view text);
/// "lf" (local alpha), "lf-global" or "roe"; the alpha scope is written to
/// `scope` when given.
FluxKind parse_flux(std::string_view text, AlphaScope* scope = nullptr);
std::string to_string(Method m);
std::string to_string(FluxKind f, AlphaScope scope = AlphaScope::Local);

/// Semi-discrete right-hand side with reusable scratch storage. One Solver
/// must not be shared between threads; create one per concurrent caller.
class Solver {
 public:
  explicit Solver(SchemeConfig config);

  [[nodiscard]] const SchemeConfig& config() const noexcept { return config_; }

  /// Writes -dF/dx - dG/dy for `field` into `out`. Ghost cells must be
  /// filled. Throws UnphysicalState with the interface location when a
  /// reconstructed state has non-positive density or pressure.
  void compute_rhs(const CellField& field, Tendency& out);

  /// Fills ghost cells of `stage` using the configured boundary conditions
  /// and evaluates the right-hand side (RK stage contract).
  void evaluate_stage(CellField& stage, Tendency& out);

 private:
  struct AxisWork {
    DirectionalReconstruction rec;
    InterfaceArray point_minus;
    InterfaceArray point_plus;
    InterfaceArray point_flux;
    InterfaceArray flux;
  };

  void sweep(const CellField& field, Axis axis, double alpha, AxisWork& work);

  SchemeConfig config_;
  AxisWork x_work_;
  AxisWork y_work_;
};

/// Convenience wrapper allocating a fresh Solver.
Tendency compute_rhs(const CellField& field, const SchemeConfig& config);

/// dt = cfl / (Sx/dx + Sy/dy), clipped so that time + dt does not pass
/// t_end.
double compute_dt(const CellField& field, const SchemeConfig& config,
                  double t_end = std::numeric_limits<double>::infinity());

struct AdvanceOptions {
  long long max_steps = 10'000'000;
  /// Called after every step with the step count and new time.
  std::function<void(long long, double)> on_step;
};

/// Integrates to exactly t_end with CFL-controlled steps.
CellField advance_to(const CellField& field, double t_end, const SchemeConfig& config,
                     const ButcherTableau& tableau, AdvanceOptions options = {});

/// In-place variant; returns the number of steps taken.
long long advance_inplace(CellField& field, double t_end, const SchemeConfig& config,
                          const ButcherTableau& tableau, AdvanceOptions options = {});

}  // namespace cartweno
