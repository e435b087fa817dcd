#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "cartweno/state.hpp"

namespace cartweno {

/// Uniform Cartesian grid: nx * ny cells on [x_min, x_max] x [y_min, y_max]
/// with `ghost` layers of ghost cells on every side.
class GridSpec {
 public:
  GridSpec(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
           int ghost = 4);

  [[nodiscard]] int nx() const noexcept { return nx_; }
  [[nodiscard]] int ny() const noexcept { return ny_; }
  [[nodiscard]] int ghost() const noexcept { return ghost_; }
  [[nodiscard]] double x_min() const noexcept { return x_min_; }
  [[nodiscard]] double x_max() const noexcept { return x_max_; }
  [[nodiscard]] double y_min() const noexcept { return y_min_; }
  [[nodiscard]] double y_max() const noexcept { return y_max_; }
  [[nodiscard]] double dx() const noexcept { return dx_; }
  [[nodiscard]] double dy() const noexcept { return dy_; }

  /// Cell centre and interface coordinates; i may address ghost cells.
  [[nodiscard]] double xc(int i) const noexcept { return x_min_ + (i + 0.5) * dx_; }
  [[nodiscard]] double yc(int j) const noexcept { return y_min_ + (j + 0.5) * dy_; }
  [[nodiscard]] double x_face(int i) const noexcept { return x_min_ + i * dx_; }
  [[nodiscard]] double y_face(int j) const noexcept { return y_min_ + j * dy_; }

  /// Same domain, different resolution and ghost width.
  [[nodiscard]] GridSpec resized(int nx, int ny) const;
  [[nodiscard]] GridSpec with_ghost(int ghost) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int nx_;
  int ny_;
  double x_min_;
  double x_max_;
  double y_min_;
  double y_max_;
  int ghost_;
  double dx_;
  double dy_;
};

enum class BoundaryCondition { Periodic, Extrapolate };

/// Interior array of per-cell 4-vectors without ghost layers (RK tendencies).
class Tendency {
 public:
  Tendency() = default;
  Tendency(int nx, int ny);

  [[nodiscard]] int nx() const noexcept { return nx_; }
  [[nodiscard]] int ny() const noexcept { return ny_; }

  double& at(int var, int i, int j) noexcept { return planes_[var][idx(i, j)]; }
  [[nodiscard]] double at(int var, int i, int j) const noexcept {
    return planes_[var][idx(i, j)];
  }
  double* row(int var, int j) noexcept { return planes_[var].data() + idx(0, j); }
  [[nodiscard]] const double* row(int var, int j) const noexcept {
    return planes_[var].data() + idx(0, j);
  }
  [[nodiscard]] ConservedState state(int i, int j) const noexcept;

  void fill(double value);

 private:
  [[nodiscard]] std::size_t idx(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }

  int nx_ = 0;
  int ny_ = 0;
  std::array<std::vector<double>, kNumVars> planes_;
};

/// Cell averages of the conserved variables on a GridSpec, stored as one
/// plane per variable (row-major, x fastest) including ghost layers.
/// Logical indices run over [-ghost, n + ghost) on each axis.
class CellField {
 public:
  explicit CellField(const GridSpec& spec);

  [[nodiscard]] const GridSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  /// False until fill_ghost has run since the interior was last written
  /// through set_state(). Ghost cells hold NaN until first filled.
  [[nodiscard]] bool ghost_filled() const noexcept { return ghost_filled_; }
  void mark_ghost_filled(bool filled) noexcept { ghost_filled_ = filled; }

  double& at(int var, int i, int j) noexcept { return planes_[var][idx(i, j)]; }
  [[nodiscard]] double at(int var, int i, int j) const noexcept {
    return planes_[var][idx(i, j)];
  }

  [[nodiscard]] ConservedState state(int i, int j) const noexcept;
  void set_state(int i, int j, const ConservedState& q) noexcept;

  /// Pointer to logical cell (0, j) of a variable plane; valid offsets along
  /// the row are [-ghost, nx + ghost).
  double* row(int var, int j) noexcept { return planes_[var].data() + idx(0, j); }
  [[nodiscard]] const double* row(int var, int j) const noexcept {
    return planes_[var].data() + idx(0, j);
  }
  /// Distance in elements between vertically adjacent cells.
  [[nodiscard]] std::ptrdiff_t pitch() const noexcept { return pitch_; }

  /// True when every interior value of both fields is bitwise identical.
  [[nodiscard]] bool interior_equals(const CellField& other) const noexcept;

 private:
  [[nodiscard]] std::size_t idx(int i, int j) const noexcept {
    return static_cast<std::size_t>((j + spec_.ghost()) * pitch_ + (i + spec_.ghost()));
  }

  GridSpec spec_;
  std::ptrdiff_t pitch_;
  std::array<std::vector<double>, kNumVars> planes_;
  double time_ = 0.0;
  bool ghost_filled_ = false;
};

/// Supplies the cell average of cell (i, j).
using CellInitializer = std::function<ConservedState(int i, int j, const GridSpec& spec)>;
/// Pointwise data q(x, y).
using PointwiseData = std::function<ConservedState(double x, double y)>;

/// Cell averages of pointwise data by 4x4 tensor-product Gauss-Legendre
/// quadrature (exact for polynomials of degree 7 per axis).
CellInitializer quadrature_average(PointwiseData data);

CellField create_field(const GridSpec& spec, const CellInitializer& init);

/// Populates all ghost cells: x-direction first over interior rows, then
/// y-direction over full rows, which fills the corners.
void fill_ghost(CellField& field, BoundaryCondition bc_x, BoundaryCondition bc_y);

/// Averages factor x factor blocks of fine cells onto a grid coarser by
/// `factor`.
CellField restrict_field(const CellField& fine, int factor);

/// dx * dy * sum |a - b| over the interior for one variable, with
/// deterministic pairwise summation.
double l1_error(const CellField& a, const CellField& b, int var);

}  // namespace cartweno
