#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cartweno/grid.hpp"

namespace cartweno {

/// Explicit Runge-Kutta method; `a` is strictly lower triangular, row-major
/// s x s.
struct ButcherTableau {
  std::string name;
  int stages = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  [[nodiscard]] double coeff(int i, int j) const noexcept {
    return a[static_cast<std::size_t>(i) * stages + j];
  }
};

/// Six-stage fifth-order method.
ButcherTableau tableau_rk5();
/// Eleven-stage seventh-order method (Fehlberg).
ButcherTableau tableau_rk7();

/// Evaluates the tendency of a stage state into `out`. The operator may
/// refill the stage's ghost cells; it must not touch its interior.
using RhsOperator = std::function<void(CellField& stage, Tendency& out)>;

/// Thrown when the right-hand side fails inside a stage; wraps the cause.
class StageError : public Error {
 public:
  StageError(int stage, const std::string& what)
      : Error("RK stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  [[nodiscard]] int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

/// Reusable per-stage storage for rk_step.
struct RkWorkspace {
  std::vector<Tendency> k;
  std::unique_ptr<CellField> stage;
};

/// One explicit RK step of size dt. The returned field has time
/// state.time() + dt; its ghost cells are not filled.
CellField rk_step(const CellField& state, const RhsOperator& rhs, const ButcherTableau& tableau,
                  double dt);

/// In-place variant reusing `work` across steps.
void rk_step_inplace(CellField& state, const RhsOperator& rhs, const ButcherTableau& tableau,
                     double dt, RkWorkspace& work);

/// Linear stability function R(z) = 1 + z b^T (I - zA)^{-1} 1.
std::complex<double> stability_function(const ButcherTableau& tableau, std::complex<double> z);

/// Coefficients of the stability polynomial R(z) = sum_m r_m z^m,
/// r_m = b^T A^{m-1} 1 (r_0 = 1); length stages + 1.
std::vector<double> stability_polynomial(const ButcherTableau& tableau);

}  // namespace cartweno
