#include "cartweno/weno.hpp"

#include <cmath>
#include <string>

#include "cartweno/parallel.hpp"

namespace cartweno {

namespace {

// All kernels work on differences d_k = u_{i+k} - u_i so that constant data
// reconstructs to the centre value exactly. Candidates are stored as
// (q_j - u_i).

struct Fifth {
  static constexpr int kR = 3;
  static constexpr double kGammaRight[3] = {0.1, 0.6, 0.3};
  static constexpr double kGammaLeft[3] = {0.3, 0.6, 0.1};

  // v: u_{i-2..i+2}
  static inline void eval(const double* v, double* beta, double* right, double* left) {
    const double c = v[2];
    const double dm2 = v[0] - c;
    const double dm1 = v[1] - c;
    const double dp1 = v[3] - c;
    const double dp2 = v[4] - c;

    // beta = (p')^2 + 13/12 (p'')^2 at the cell centre of the quadratic.
    const double a1_0 = 0.5 * dm2 - 2.0 * dm1;
    const double a2_0 = dm2 - 2.0 * dm1;
    const double a1_1 = 0.5 * (dp1 - dm1);
    const double a2_1 = dm1 + dp1;
    const double a1_2 = 2.0 * dp1 - 0.5 * dp2;
    const double a2_2 = dp2 - 2.0 * dp1;
    constexpr double k13 = 13.0 / 12.0;
    beta[0] = a1_0 * a1_0 + k13 * a2_0 * a2_0;
    beta[1] = a1_1 * a1_1 + k13 * a2_1 * a2_1;
    beta[2] = a1_2 * a1_2 + k13 * a2_2 * a2_2;

    constexpr double k3 = 1.0 / 3.0;
    constexpr double k6 = 1.0 / 6.0;
    constexpr double k56 = 5.0 / 6.0;
    constexpr double k76 = 7.0 / 6.0;
    right[0] = k3 * dm2 - k76 * dm1;
    right[1] = -k6 * dm1 + k3 * dp1;
    right[2] = k56 * dp1 - k6 * dp2;
    left[0] = -k6 * dm2 + k56 * dm1;
    left[1] = k3 * dm1 - k6 * dp1;
    left[2] = -k76 * dp1 + k3 * dp2;
  }

  static inline double tau(const double* beta) { return std::abs(beta[0] - beta[2]); }
};

struct Seventh {
  static constexpr int kR = 4;
  static constexpr double kGammaRight[4] = {1.0 / 35.0, 12.0 / 35.0, 18.0 / 35.0, 4.0 / 35.0};
  static constexpr double kGammaLeft[4] = {4.0 / 35.0, 18.0 / 35.0, 12.0 / 35.0, 1.0 / 35.0};

  // v: u_{i-3..i+3}
  static inline void eval(const double* v, double* beta, double* right, double* left) {
    const double c = v[3];
    const double dm3 = v[0] - c;
    const double dm2 = v[1] - c;
    const double dm1 = v[2] - c;
    const double dp1 = v[4] - c;
    const double dp2 = v[5] - c;
    const double dp3 = v[6] - c;

    // Jiang-Shu indicator of the cubic as a sum of squares of its centre
    // derivatives: (p' + p'''/24)^2 + 13/12 p''^2 + 781/720 p'''^2.
    constexpr double k8 = 1.0 / 8.0;
    constexpr double k24 = 1.0 / 24.0;
    const double a1_0 = -23.0 * k8 * dm1 + 11.0 * k8 * dm2 - 7.0 * k24 * dm3;
    const double a2_0 = -5.0 * dm1 + 4.0 * dm2 - dm3;
    const double a3_0 = -3.0 * dm1 + 3.0 * dm2 - dm3;
    const double a1_1 = -9.0 * k8 * dm1 + 5.0 * k24 * dm2 + 7.0 * k24 * dp1;
    const double a2_1 = dm1 + dp1;
    const double a3_1 = 3.0 * dm1 - dm2 + dp1;
    const double a1_2 = -7.0 * k24 * dm1 + 9.0 * k8 * dp1 - 5.0 * k24 * dp2;
    const double a2_2 = dm1 + dp1;
    const double a3_2 = -dm1 - 3.0 * dp1 + dp2;
    const double a1_3 = 23.0 * k8 * dp1 - 11.0 * k8 * dp2 + 7.0 * k24 * dp3;
    const double a2_3 = -5.0 * dp1 + 4.0 * dp2 - dp3;
    const double a3_3 = 3.0 * dp1 - 3.0 * dp2 + dp3;
    constexpr double k13 = 13.0 / 12.0;
    constexpr double k781 = 781.0 / 720.0;
    const auto is = [&](double a1, double a2, double a3) {
      const double s = a1 + k24 * a3;
      return s * s + k13 * a2 * a2 + k781 * a3 * a3;
    };
    beta[0] = is(a1_0, a2_0, a3_0);
    beta[1] = is(a1_1, a2_1, a3_1);
    beta[2] = is(a1_2, a2_2, a3_2);
    beta[3] = is(a1_3, a2_3, a3_3);

    constexpr double k12 = 1.0 / 12.0;
    right[0] = -0.25 * dm3 + 13.0 * k12 * dm2 - 23.0 * k12 * dm1;
    right[1] = k12 * dm2 - 5.0 * k12 * dm1 + 0.25 * dp1;
    right[2] = -k12 * dm1 + 7.0 * k12 * dp1 - k12 * dp2;
    right[3] = 13.0 * k12 * dp1 - 5.0 * k12 * dp2 + k12 * dp3;
    left[0] = k12 * dm3 - 5.0 * k12 * dm2 + 13.0 * k12 * dm1;
    left[1] = -k12 * dm2 + 7.0 * k12 * dm1 - k12 * dp1;
    left[2] = 0.25 * dm1 - 5.0 * k12 * dp1 + k12 * dp2;
    left[3] = -23.0 * k12 * dp1 + 13.0 * k12 * dp2 - 0.25 * dp3;
  }

  static inline double tau(const double* beta) {
    return std::abs(beta[0] + 3.0 * beta[1] - 3.0 * beta[2] - beta[3]);
  }
};

// Unnormalised weights for both sides.
template <class S, Weighting W>
inline void raw_weights(const double* beta, double eps, double* right_w, double* left_w) {
  constexpr int r = S::kR;
  if constexpr (W == Weighting::Linear) {
    for (int j = 0; j < r; ++j) {
      right_w[j] = S::kGammaRight[j];
      left_w[j] = S::kGammaLeft[j];
    }
  } else if constexpr (W == Weighting::Z) {
    const double t = S::tau(beta);
    for (int j = 0; j < r; ++j) {
      const double ratio = t / (beta[j] + eps);
      const double a = 1.0 + ratio * ratio;
      right_w[j] = S::kGammaRight[j] * a;
      left_w[j] = S::kGammaLeft[j] * a;
    }
  } else {
    for (int j = 0; j < r; ++j) {
      const double b = eps + beta[j];
      const double a = 1.0 / (b * b);
      right_w[j] = S::kGammaRight[j] * a;
      left_w[j] = S::kGammaLeft[j] * a;
    }
  }
}

template <class S, Weighting W>
inline void reconstruct_cell(const double* v, double eps, double& right, double& left) {
  constexpr int r = S::kR;
  double beta[r];
  double qr[r];
  double ql[r];
  S::eval(v, beta, qr, ql);
  double wr[r];
  double wl[r];
  raw_weights<S, W>(beta, eps, wr, wl);
  double sr = 0.0;
  double sl = 0.0;
  double nr = 0.0;
  double nl = 0.0;
  for (int j = 0; j < r; ++j) {
    sr += wr[j];
    sl += wl[j];
    nr += wr[j] * qr[j];
    nl += wl[j] * ql[j];
  }
  const double c = v[r - 1];
  right = c + nr / sr;
  left = c + nl / sl;
}

template <class S, Weighting W>
void line_kernel(const double* const* taps, int count, double eps, double* __restrict right,
                 double* __restrict left) {
  constexpr int w = 2 * S::kR - 1;
  const double* t[w];
  for (int m = 0; m < w; ++m) t[m] = taps[m];
#pragma GCC ivdep
  for (int n = 0; n < count; ++n) {
    double v[w];
    for (int m = 0; m < w; ++m) v[m] = t[m][n];
    reconstruct_cell<S, W>(v, eps, right[n], left[n]);
  }
}

void check_window(std::span<const double> window) {
  if (window.size() != 5 && window.size() != 7) {
    throw Error("WENO window must hold 5 or 7 cell averages, got " +
                std::to_string(window.size()));
  }
}

template <class S>
void eval_window(std::span<const double> window, double* beta, double* right, double* left) {
  S::eval(window.data(), beta, right, left);
}

}  // namespace

double ReconstructionScheme::epsilon(double h) const noexcept {
  switch (weighting) {
    case Weighting::JS:
      return order == WenoOrder::Fifth ? 1e-6 : 1e-10;
    case Weighting::Z: {
      const double h2 = h * h;
      return order == WenoOrder::Fifth ? h2 * h2 : h2 * h2 * h;
    }
    case Weighting::Linear:
      return 0.0;
  }
  return 0.0;
}

std::string ReconstructionScheme::name() const {
  const char* w = weighting == Weighting::JS ? "js" : weighting == Weighting::Z ? "z" : "lin";
  return std::string(w) + (order == WenoOrder::Fifth ? "5" : "7");
}

ReconstructionScheme ReconstructionScheme::parse(std::string_view text) {
  for (const auto o : {WenoOrder::Fifth, WenoOrder::Seventh}) {
    for (const auto w : {Weighting::JS, Weighting::Z, Weighting::Linear}) {
      const ReconstructionScheme s{o, w};
      if (s.name() == text) return s;
    }
  }
  throw ConfigError("unknown reconstruction scheme '" + std::string(text) +
                    "' (expected js5, z5, js7 or z7)");
}

CandidateValues candidate_values(std::span<const double> window) {
  check_window(window);
  CandidateValues out;
  double beta[4];
  if (window.size() == 5) {
    eval_window<Fifth>(window, beta, out.right.v.data(), out.left.v.data());
    out.right.size = out.left.size = 3;
  } else {
    eval_window<Seventh>(window, beta, out.right.v.data(), out.left.v.data());
    out.right.size = out.left.size = 4;
  }
  const double c = window[window.size() / 2];
  for (int j = 0; j < out.right.size; ++j) {
    out.right.v[j] += c;
    out.left.v[j] += c;
  }
  return out;
}

StencilVector smoothness_indicators(std::span<const double> window) {
  check_window(window);
  StencilVector beta;
  double qr[4];
  double ql[4];
  if (window.size() == 5) {
    eval_window<Fifth>(window, beta.v.data(), qr, ql);
    beta.size = 3;
  } else {
    eval_window<Seventh>(window, beta.v.data(), qr, ql);
    beta.size = 4;
  }
  return beta;
}

StencilVector nonlinear_weights(const StencilVector& betas, const ReconstructionScheme& scheme,
                                Side side, double h) {
  const int r = scheme.radius();
  if (betas.size != r) throw Error("nonlinear_weights: beta count does not match scheme order");
  const double eps = scheme.epsilon(h);
  StencilVector right{r, {}};
  StencilVector left{r, {}};
  const double* b = betas.v.data();
  const auto dispatch = [&]<class S>() {
    switch (scheme.weighting) {
      case Weighting::JS:
        raw_weights<S, Weighting::JS>(b, eps, right.v.data(), left.v.data());
        break;
      case Weighting::Z:
        raw_weights<S, Weighting::Z>(b, eps, right.v.data(), left.v.data());
        break;
      case Weighting::Linear:
        raw_weights<S, Weighting::Linear>(b, eps, right.v.data(), left.v.data());
        break;
    }
  };
  if (scheme.order == WenoOrder::Fifth) {
    dispatch.template operator()<Fifth>();
  } else {
    dispatch.template operator()<Seventh>();
  }
  StencilVector& w = side == Side::Right ? right : left;
  double sum = 0.0;
  for (int j = 0; j < r; ++j) sum += w.v[j];
  for (int j = 0; j < r; ++j) w.v[j] /= sum;
  return w;
}

void reconstruct_line(const ReconstructionScheme& scheme, double h,
                      std::span<const double* const> taps, int count, double* right,
                      double* left) {
  if (static_cast<int>(taps.size()) != scheme.window()) {
    throw Error("reconstruct_line: tap count does not match scheme window");
  }
  const double eps = scheme.epsilon(h);
  const double* const* t = taps.data();
  const bool fifth = scheme.order == WenoOrder::Fifth;
  switch (scheme.weighting) {
    case Weighting::JS:
      fifth ? line_kernel<Fifth, Weighting::JS>(t, count, eps, right, left)
            : line_kernel<Seventh, Weighting::JS>(t, count, eps, right, left);
      break;
    case Weighting::Z:
      fifth ? line_kernel<Fifth, Weighting::Z>(t, count, eps, right, left)
            : line_kernel<Seventh, Weighting::Z>(t, count, eps, right, left);
      break;
    case Weighting::Linear:
      fifth ? line_kernel<Fifth, Weighting::Linear>(t, count, eps, right, left)
            : line_kernel<Seventh, Weighting::Linear>(t, count, eps, right, left);
      break;
  }
}

InterfacePair reconstruct_pair(std::span<const double> window, const ReconstructionScheme& scheme,
                               double h) {
  check_window(window);
  if (static_cast<int>(window.size()) != scheme.window()) {
    throw Error("reconstruct_pair: window length does not match scheme order");
  }
  std::array<const double*, 7> taps{};
  for (std::size_t m = 0; m < window.size(); ++m) taps[m] = window.data() + m;
  InterfacePair out{};
  reconstruct_line(scheme, h, std::span<const double* const>(taps.data(), window.size()), 1,
                   &out.right_minus, &out.left_plus);
  return out;
}

InterfaceArray::InterfaceArray(Axis axis, int normal_faces, int transverse_cells,
                               int transverse_ext)
    : axis_(axis), faces_(normal_faces), cells_(transverse_cells), ext_(transverse_ext) {
  const auto size = static_cast<std::size_t>(faces_) * (cells_ + 2 * ext_);
  for (auto& d : data_) d.assign(size, 0.0);
}

ConservedState InterfaceArray::state(int s, int n) const noexcept {
  ConservedState q;
  for (int k = 0; k < kNumVars; ++k) q[k] = at(k, s, n);
  return q;
}

DirectionalReconstruction reconstruct_field_direction(const CellField& field, Axis axis,
                                                      const ReconstructionScheme& scheme,
                                                      int transverse_ext) {
  DirectionalReconstruction out;
  reconstruct_field_direction(field, axis, scheme, transverse_ext, out);
  return out;
}

void reconstruct_field_direction(const CellField& field, Axis axis,
                                 const ReconstructionScheme& scheme, int transverse_ext,
                                 DirectionalReconstruction& out) {
  const GridSpec& s = field.spec();
  const int r = scheme.radius();
  if (transverse_ext < 0) throw GridError("transverse extension must be non-negative");
  if (s.ghost() < r || s.ghost() < transverse_ext) {
    throw GridError("reconstruction needs ghost width >= " +
                    std::to_string(std::max(r, transverse_ext)) + ", grid has " +
                    std::to_string(s.ghost()));
  }
  const bool along_x = axis == Axis::X;
  const int normal_cells = along_x ? s.nx() : s.ny();
  const int trans_cells = along_x ? s.ny() : s.nx();
  const int faces = normal_cells + 1;
  const InterfaceArray shape(axis, faces, trans_cells, transverse_ext);
  if (!out.minus.same_shape(shape)) out.minus = shape;
  if (!out.plus.same_shape(shape)) out.plus = shape;
  const double h = along_x ? s.dx() : s.dy();
  const int w = scheme.window();

  if (along_x) {
    // One line per row; cells -1..nx give every interface 0..nx.
    parallel_for(-transverse_ext, trans_cells + transverse_ext, [&](int row) {
      std::vector<double> right(static_cast<std::size_t>(faces + 1));
      std::vector<double> left(static_cast<std::size_t>(faces + 1));
      std::array<const double*, 7> taps{};
      for (int k = 0; k < kNumVars; ++k) {
        const double* base = field.row(k, row) - 1;
        for (int m = 0; m < w; ++m) taps[m] = base + (m - (r - 1));
        reconstruct_line(scheme, h, std::span<const double* const>(taps.data(), w), faces + 1,
                         right.data(), left.data());
        double* qm = out.minus.ptr(k, row, 0);
        double* qp = out.plus.ptr(k, row, 0);
        for (int n = 0; n < faces; ++n) {
          qm[n] = right[n];
          qp[n] = left[n + 1];
        }
      }
    });
  } else {
    // One line per cell row c = -1..ny, vectorised along x over the
    // extended transverse range.
    const int count = trans_cells + 2 * transverse_ext;
    const std::ptrdiff_t pitch = field.pitch();
    parallel_for(-1, normal_cells + 1, [&](int c) {
      std::vector<double> right(static_cast<std::size_t>(count));
      std::vector<double> left(static_cast<std::size_t>(count));
      std::array<const double*, 7> taps{};
      for (int k = 0; k < kNumVars; ++k) {
        const double* base = field.row(k, c) - transverse_ext;
        for (int m = 0; m < w; ++m) taps[m] = base + (m - (r - 1)) * pitch;
        reconstruct_line(scheme, h, std::span<const double* const>(taps.data(), w), count,
                         right.data(), left.data());
        if (c + 1 < faces) {
          double* qm = out.minus.ptr(k, -transverse_ext, c + 1);
          std::copy(right.begin(), right.end(), qm);
        }
        if (c >= 0) {
          double* qp = out.plus.ptr(k, -transverse_ext, c);
          std::copy(left.begin(), left.end(), qp);
        }
      }
    });
  }
}

}  // namespace cartweno
