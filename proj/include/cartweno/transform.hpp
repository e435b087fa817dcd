#pragma once

#include <span>
#include <vector>

namespace cartweno {

/// Order2: single h^2/24 correction (flux accuracy 4).
/// Order4: h^2/24 with a fourth-order second derivative plus h^4/1920
/// (flux accuracy 6).
enum class TransformOrder { Order2, Order4 };

/// Stencil half-width t of a transform order.
constexpr int transform_halfwidth(TransformOrder order) noexcept {
  return order == TransformOrder::Order2 ? 1 : 2;
}

/// Cell (or face) averages -> midpoint values. Output element k belongs
/// to input element k + t; the output is 2t shorter than the input.
std::vector<double> avg_to_point_line(std::span<const double> averages, TransformOrder order);

/// Midpoint values -> averages, same indexing as avg_to_point_line.
std::vector<double> point_to_avg_line(std::span<const double> points, TransformOrder order);

/// Raw kernels: out[n] from taps[m][n], m = 0..2t, where taps[t] is the
/// centre line. Used by the solver on strided interface data.
void avg_to_point_taps(TransformOrder order, std::span<const double* const> taps, int count,
                       double* out);
void point_to_avg_taps(TransformOrder order, std::span<const double* const> taps, int count,
                       double* out);

/// d-dimensional average -> point value at the centre cell of a cubic block
/// of side 2 * (p / 2) + 1 stored row-major (last axis fastest), equal mesh
/// width on every axis. d in {1, 2, 3}, p in {2, 4}.
double avg_to_point_multi(std::span<const double> block, int d, int p);

}  // namespace cartweno
