#include "cartweno/transform.hpp"

#include <array>
#include <string>

#include "cartweno/state.hpp"

namespace cartweno {

namespace {

// Order4 average -> point, collapsed stencil in difference form:
// q = Q - [-3/640 (Q_-2 + Q_2 - 2Q) + 29/480 (Q_-1 + Q_1 - 2Q)].
constexpr double kA2Far = -3.0 / 640.0;
constexpr double kA2Near = 29.0 / 480.0;
// Order4 point -> average: f + 1/24 (D2 - D4/12) f + 1/1920 D4 f with
// D2 = (1,-2,1), D4 = (1,-4,6,-4,1), regrouped as
// f + cn (f_-1 + f_1 - 2f) + cf (f_-2 + f_2 - 2f).
//   D4 = (f_-2 + f_2 - 2f) - 4 (f_-1 + f_1 - 2f)
constexpr double kD4 = 1.0 / 1920.0 - 1.0 / 288.0;
constexpr double kP2Near = 1.0 / 24.0 - 4.0 * kD4;
constexpr double kP2Far = kD4;
constexpr double k24 = 1.0 / 24.0;

void check_taps(TransformOrder order, std::size_t taps) {
  if (static_cast<int>(taps) != 2 * transform_halfwidth(order) + 1) {
    throw Error("transform: tap count does not match transform order");
  }
}

std::vector<double> apply_line(std::span<const double> values, TransformOrder order,
                               bool to_point) {
  const int t = transform_halfwidth(order);
  const int n = static_cast<int>(values.size());
  if (n < 2 * t + 1) {
    throw Error("transform: sequence of length " + std::to_string(n) + " is shorter than " +
                std::to_string(2 * t + 1));
  }
  const int count = n - 2 * t;
  std::vector<double> out(static_cast<std::size_t>(count));
  std::array<const double*, 5> taps{};
  for (int m = 0; m <= 2 * t; ++m) taps[m] = values.data() + m;
  const std::span<const double* const> tv(taps.data(), static_cast<std::size_t>(2 * t + 1));
  if (to_point) {
    avg_to_point_taps(order, tv, count, out.data());
  } else {
    point_to_avg_taps(order, tv, count, out.data());
  }
  return out;
}

}  // namespace

void avg_to_point_taps(TransformOrder order, std::span<const double* const> taps, int count,
                       double* out) {
  check_taps(order, taps.size());
  if (order == TransformOrder::Order2) {
    const double* a = taps[0];
    const double* c = taps[1];
    const double* b = taps[2];
#pragma GCC ivdep
    for (int n = 0; n < count; ++n) {
      out[n] = c[n] - k24 * ((a[n] - c[n]) + (b[n] - c[n]));
    }
  } else {
    const double* a2 = taps[0];
    const double* a1 = taps[1];
    const double* c = taps[2];
    const double* b1 = taps[3];
    const double* b2 = taps[4];
#pragma GCC ivdep
    for (int n = 0; n < count; ++n) {
      const double near = (a1[n] - c[n]) + (b1[n] - c[n]);
      const double far = (a2[n] - c[n]) + (b2[n] - c[n]);
      out[n] = c[n] - (kA2Far * far + kA2Near * near);
    }
  }
}

void point_to_avg_taps(TransformOrder order, std::span<const double* const> taps, int count,
                       double* out) {
  check_taps(order, taps.size());
  if (order == TransformOrder::Order2) {
    const double* a = taps[0];
    const double* c = taps[1];
    const double* b = taps[2];
#pragma GCC ivdep
    for (int n = 0; n < count; ++n) {
      out[n] = c[n] + k24 * ((a[n] - c[n]) + (b[n] - c[n]));
    }
  } else {
    const double* a2 = taps[0];
    const double* a1 = taps[1];
    const double* c = taps[2];
    const double* b1 = taps[3];
    const double* b2 = taps[4];
#pragma GCC ivdep
    for (int n = 0; n < count; ++n) {
      const double near = (a1[n] - c[n]) + (b1[n] - c[n]);
      const double far = (a2[n] - c[n]) + (b2[n] - c[n]);
      out[n] = c[n] + (kP2Near * near + kP2Far * far);
    }
  }
}

std::vector<double> avg_to_point_line(std::span<const double> averages, TransformOrder order) {
  return apply_line(averages, order, true);
}

std::vector<double> point_to_avg_line(std::span<const double> points, TransformOrder order) {
  return apply_line(points, order, false);
}

double avg_to_point_multi(std::span<const double> block, int d, int p) {
  if (d < 1 || d > 3) throw Error("avg_to_point_multi: dimension must be 1, 2 or 3");
  if (p != 2 && p != 4) throw Error("avg_to_point_multi: order must be 2 or 4");
  const int t = p / 2;
  const int side = 2 * t + 1;
  std::size_t expected = 1;
  for (int k = 0; k < d; ++k) expected *= static_cast<std::size_t>(side);
  if (block.size() != expected) {
    throw Error("avg_to_point_multi: block must hold " + std::to_string(expected) + " values");
  }

  // Offset (o_0, .., o_{d-1}) in [-t, t]^d -> flat index.
  const auto at = [&](std::array<int, 3> o) {
    std::size_t idx = 0;
    for (int k = 0; k < d; ++k) idx = idx * side + static_cast<std::size_t>(o[k] + t);
    return block[idx];
  };
  const std::array<int, 3> centre{0, 0, 0};
  const double q0 = at(centre);
  const auto shifted = [&](int axis, int by) {
    std::array<int, 3> o{0, 0, 0};
    o[axis] = by;
    return at(o) - q0;
  };

  // The inverse average operator prod_k (1 - D2_k/24 + 3/640 D4_k)
  // expanded to fourth order in h; D2, D4 are undivided differences of
  // the averages. Cross terms enter with +1/576 D2_k D2_l.
  double correction = 0.0;
  for (int k = 0; k < d; ++k) {
    const double near = shifted(k, -1) + shifted(k, 1);
    if (p == 2) {
      correction += k24 * near;
    } else {
      const double far = shifted(k, -2) + shifted(k, 2);
      correction += kA2Far * far + kA2Near * near;
    }
  }
  if (p == 4) {
    for (int k = 0; k < d; ++k) {
      for (int l = k + 1; l < d; ++l) {
        // D2_k D2_l Q over the 3x3 sub-block in the (k, l) plane.
        double cross = 0.0;
        for (int a = -1; a <= 1; ++a) {
          for (int b = -1; b <= 1; ++b) {
            std::array<int, 3> o{0, 0, 0};
            o[k] = a;
            o[l] = b;
            const double wa = a == 0 ? -2.0 : 1.0;
            const double wb = b == 0 ? -2.0 : 1.0;
            cross += wa * wb * (at(o) - q0);
          }
        }
        correction -= cross / 576.0;
      }
    }
  }
  return q0 - correction;
}

}  // namespace cartweno
