#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartweno/grid.hpp"

namespace cartweno {

enum class WenoOrder { Fifth, Seventh };

/// JS: Jiang-Shu weights. Z: Borges/Don weights with global smoothness
/// indicator tau. Linear: optimal linear weights only (testing).
enum class Weighting { JS, Z, Linear };

enum class Side { Left, Right };

struct ReconstructionScheme {
  WenoOrder order = WenoOrder::Fifth;
  Weighting weighting = Weighting::Z;

  /// Number of candidate stencils r; the window has 2r - 1 cells.
  [[nodiscard]] constexpr int radius() const noexcept { return order == WenoOrder::Fifth ? 3 : 4; }
  [[nodiscard]] constexpr int window() const noexcept { return 2 * radius() - 1; }
  /// Regularisation epsilon for mesh width h: JS5 1e-6, JS7 1e-10,
  /// Z5 h^4, Z7 h^5.
  [[nodiscard]] double epsilon(double h) const noexcept;

  [[nodiscard]] std::string name() const;
  /// Accepts "js5", "z5", "js7", "z7" (and "lin5", "lin7").
  static ReconstructionScheme parse(std::string_view text);

  friend bool operator==(const ReconstructionScheme&, const ReconstructionScheme&) = default;
};

/// Up to four per-candidate numbers (beta, weights, candidate values).
struct StencilVector {
  int size = 0;
  std::array<double, 4> v{};

  double operator[](int k) const noexcept { return v[k]; }
  [[nodiscard]] std::span<const double> values() const noexcept {
    return {v.data(), static_cast<std::size_t>(size)};
  }
};

/// Candidate reconstructions of one cell, at its right interface (feeding
/// Q^-_{i+1/2}) and left interface (feeding Q^+_{i-1/2}).
struct CandidateValues {
  StencilVector right;
  StencilVector left;
};

/// Reconstructed interface averages of one cell.
struct InterfacePair {
  double right_minus;  // Q^-_{i+1/2}
  double left_plus;    // Q^+_{i-1/2}
};

// The window holds 2r - 1 cell averages centred on the reconstructed cell.
CandidateValues candidate_values(std::span<const double> window);
StencilVector smoothness_indicators(std::span<const double> window);
StencilVector nonlinear_weights(const StencilVector& betas, const ReconstructionScheme& scheme,
                                Side side, double h);
InterfacePair reconstruct_pair(std::span<const double> window, const ReconstructionScheme& scheme,
                               double h);

/// Interface averages along one axis. Element (s, n) is the interface
/// x_{n - 1/2} in row s (axis X) or y_{n - 1/2} in column s (axis Y), with
/// normal index n = 0..N and transverse index s = -ext..M-1+ext.
///
/// Storage is a set of contiguous lines: for axis X one line per s (along
/// n), for axis Y one line per n (along s). Transverse neighbours are
/// `s_stride()` elements apart, normal neighbours `n_stride()`.
class InterfaceArray {
 public:
  InterfaceArray() = default;
  InterfaceArray(Axis axis, int normal_faces, int transverse_cells, int transverse_ext);

  [[nodiscard]] Axis axis() const noexcept { return axis_; }
  [[nodiscard]] int normal_faces() const noexcept { return faces_; }
  [[nodiscard]] int transverse_cells() const noexcept { return cells_; }
  [[nodiscard]] int transverse_ext() const noexcept { return ext_; }

  double& at(int var, int s, int n) noexcept { return data_[var][idx(s, n)]; }
  [[nodiscard]] double at(int var, int s, int n) const noexcept { return data_[var][idx(s, n)]; }
  [[nodiscard]] ConservedState state(int s, int n) const noexcept;

  /// Pointer to element (s, n) of a variable.
  double* ptr(int var, int s, int n) noexcept { return data_[var].data() + idx(s, n); }
  [[nodiscard]] const double* ptr(int var, int s, int n) const noexcept {
    return data_[var].data() + idx(s, n);
  }
  [[nodiscard]] std::ptrdiff_t s_stride() const noexcept {
    return axis_ == Axis::X ? faces_ : 1;
  }
  [[nodiscard]] std::ptrdiff_t n_stride() const noexcept {
    return axis_ == Axis::X ? 1 : cells_ + 2 * ext_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return data_[0].size(); }
  double* data(int var) noexcept { return data_[var].data(); }
  [[nodiscard]] const double* data(int var) const noexcept { return data_[var].data(); }

  /// True when shape and axis match, so element-wise loops over data() line up.
  [[nodiscard]] bool same_shape(const InterfaceArray& o) const noexcept {
    return axis_ == o.axis_ && faces_ == o.faces_ && cells_ == o.cells_ && ext_ == o.ext_;
  }

 private:
  [[nodiscard]] std::size_t idx(int s, int n) const noexcept {
    return static_cast<std::size_t>(s + ext_) * static_cast<std::size_t>(s_stride()) +
           static_cast<std::size_t>(n) * static_cast<std::size_t>(n_stride());
  }
  Axis axis_ = Axis::X;
  int faces_ = 0;
  int cells_ = 0;
  int ext_ = 0;
  std::array<std::vector<double>, kNumVars> data_;
};

struct DirectionalReconstruction {
  InterfaceArray minus;  // left-biased values Q^-
  InterfaceArray plus;   // right-biased values Q^+
};

/// Component-wise reconstruction of every interface normal to `axis`,
/// covering `transverse_ext` extra rows (columns) beyond the interior.
/// Requires filled ghost cells with ghost >= max(r, transverse_ext).
DirectionalReconstruction reconstruct_field_direction(const CellField& field, Axis axis,
                                                      const ReconstructionScheme& scheme,
                                                      int transverse_ext = 0);

/// Same, writing into `out` and reusing its storage when the shape matches.
void reconstruct_field_direction(const CellField& field, Axis axis,
                                 const ReconstructionScheme& scheme, int transverse_ext,
                                 DirectionalReconstruction& out);

/// Line kernel used by the solver: reconstructs `count` consecutive cells.
/// taps[m] points at the first cell shifted by (m - (r - 1)) along the
/// reconstruction direction; outputs are the right and left interface
/// values of each cell.
void reconstruct_line(const ReconstructionScheme& scheme, double h,
                      std::span<const double* const> taps, int count, double* right,
                      double* left);

}  // namespace cartweno
