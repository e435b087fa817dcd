#include "cartweno/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cartweno/euler.hpp"
#include "cartweno/parallel.hpp"

namespace cartweno {

std::optional<TransformOrder> SchemeConfig::transform_order() const noexcept {
  switch (method) {
    case Method::Method2:
      return TransformOrder::Order2;
    case Method::Method3:
      return TransformOrder::Order4;
    default:
      return std::nullopt;
  }
}

int SchemeConfig::transverse_width() const noexcept {
  const auto order = transform_order();
  return order ? 2 * transform_halfwidth(*order) : 0;
}

int SchemeConfig::required_ghost() const noexcept {
  return std::max(scheme.radius(), transverse_width());
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw ConfigError("cfl must lie in (0, 1], got " + std::to_string(cfl));
  }
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1, got " + std::to_string(gamma));
}

std::string SchemeConfig::describe() const {
  std::ostringstream os;
  os << scheme.name() << " method" << static_cast<int>(method) << ' ' << to_string(flux, alpha)
     << " cfl=" << cfl;
  return os.str();
}

Method parse_method(std::string_view text) {
  if (text == "1" || text == "method1") return Method::Method1;
  if (text == "2" || text == "method2") return Method::Method2;
  if (text == "3" || text == "method3") return Method::Method3;
  throw ConfigError("unknown method '" + std::string(text) + "' (expected 1, 2 or 3)");
}

FluxKind parse_flux(std::string_view text, AlphaScope* scope) {
  if (text == "lf" || text == "lf-global") {
    if (scope) *scope = text == "lf" ? AlphaScope::Local : AlphaScope::Global;
    return FluxKind::LaxFriedrichs;
  }
  if (text == "roe") return FluxKind::RoeHH;
  throw ConfigError("unknown flux '" + std::string(text) + "' (expected lf, lf-global or roe)");
}

std::string to_string(Method m) { return "method" + std::to_string(static_cast<int>(m)); }

std::string to_string(FluxKind f, AlphaScope scope) {
  if (f == FluxKind::RoeHH) return "roe";
  return scope == AlphaScope::Local ? "lf" : "lf-global";
}

namespace {

// Applies a transverse transform: dst has extension src.ext - t.
void transverse(TransformOrder order, bool to_point, const InterfaceArray& src,
                InterfaceArray& dst) {
  const int t = transform_halfwidth(order);
  const int ext = src.transverse_ext() - t;
  const InterfaceArray shape(src.axis(), src.normal_faces(), src.transverse_cells(), ext);
  if (!dst.same_shape(shape)) dst = shape;
  const auto kernel = to_point ? avg_to_point_taps : point_to_avg_taps;
  const int width = 2 * t + 1;
  const int faces = src.normal_faces();
  const int cells = src.transverse_cells();

  if (src.axis() == Axis::X) {
    // Lines run along n; transverse neighbours are whole lines apart.
    parallel_for(-ext, cells + ext, [&](int s) {
      std::array<const double*, 5> taps{};
      for (int var = 0; var < kNumVars; ++var) {
        for (int m = 0; m < width; ++m) taps[m] = src.ptr(var, s - t + m, 0);
        kernel(order, std::span<const double* const>(taps.data(), width), faces,
               dst.ptr(var, s, 0));
      }
    });
  } else {
    const int count = cells + 2 * ext;
    parallel_for(0, faces, [&](int n) {
      std::array<const double*, 5> taps{};
      for (int var = 0; var < kNumVars; ++var) {
        for (int m = 0; m < width; ++m) taps[m] = src.ptr(var, -ext - t + m, n);
        kernel(order, std::span<const double* const>(taps.data(), width), count,
               dst.ptr(var, -ext, n));
      }
    });
  }
}

struct LineRange {
  int lines;
  int length;
};

LineRange line_range(const InterfaceArray& a) {
  const int trans = a.transverse_cells() + 2 * a.transverse_ext();
  if (a.axis() == Axis::X) return {trans, a.normal_faces()};
  return {a.normal_faces(), trans};
}

// (s, n) of flat element e.
std::pair<int, int> locate(const InterfaceArray& a, std::size_t e) {
  const auto len = static_cast<std::size_t>(line_range(a).length);
  const int line = static_cast<int>(e / len);
  const int pos = static_cast<int>(e % len);
  if (a.axis() == Axis::X) return {line - a.transverse_ext(), pos};
  return {pos - a.transverse_ext(), line};
}

std::string where(const InterfaceArray& a, std::size_t e, const char* side) {
  const auto [s, n] = locate(a, e);
  std::ostringstream os;
  if (a.axis() == Axis::X) {
    os << side << " state at x-interface i=" << n << "-1/2, row j=" << s;
  } else {
    os << side << " state at y-interface j=" << n << "-1/2, column i=" << s;
  }
  return os.str();
}

// Returns the first flat index in [begin, end) with a non-positive density or
// pressure, or end.
std::size_t first_unphysical(const InterfaceArray& a, std::size_t begin, std::size_t end,
                             double gamma) {
  const double* rho = a.data(0);
  const double* mx = a.data(1);
  const double* my = a.data(2);
  const double* en = a.data(3);
  for (std::size_t e = begin; e < end; ++e) {
    const double p = (gamma - 1.0) * (en[e] - 0.5 * (mx[e] * mx[e] + my[e] * my[e]) / rho[e]);
    if (!(rho[e] > 0.0 && p > 0.0)) return e;
  }
  return end;
}

// Lax-Friedrichs over a contiguous element range; `mn` is the momentum
// component normal to the interface. A negative alpha selects the local
// speed max(|u_n| + c) of the two states. Returns false if any state is
// unphysical (the caller locates it).
bool lf_range(const InterfaceArray& ql, const InterfaceArray& qr, InterfaceArray& f,
              std::size_t begin, std::size_t end, int mn, double alpha, double gamma) {
  const int mt = 3 - mn;
  const double* __restrict lr = ql.data(0);
  const double* __restrict ln = ql.data(mn);
  const double* __restrict lt = ql.data(mt);
  const double* __restrict le = ql.data(3);
  const double* __restrict rr = qr.data(0);
  const double* __restrict rn = qr.data(mn);
  const double* __restrict rt = qr.data(mt);
  const double* __restrict re = qr.data(3);
  double* __restrict f0 = f.data(0);
  double* __restrict fn = f.data(mn);
  double* __restrict ft = f.data(mt);
  double* __restrict f3 = f.data(3);
  const double g1 = gamma - 1.0;
  const bool local = alpha < 0.0;
  bool ok = true;
  for (std::size_t e = begin; e < end; ++e) {
    const double il = 1.0 / lr[e];
    const double ir = 1.0 / rr[e];
    const double ul = ln[e] * il;
    const double ur = rn[e] * ir;
    const double pl = g1 * (le[e] - 0.5 * (ln[e] * ln[e] + lt[e] * lt[e]) * il);
    const double pr = g1 * (re[e] - 0.5 * (rn[e] * rn[e] + rt[e] * rt[e]) * ir);
    ok = ok & (lr[e] > 0.0) & (rr[e] > 0.0) & (pl > 0.0) & (pr > 0.0);
    double a = alpha;
    if (local) {
      const double sl = std::abs(ul) + std::sqrt(gamma * std::abs(pl) * il);
      const double sr = std::abs(ur) + std::sqrt(gamma * std::abs(pr) * ir);
      a = std::max(sl, sr);
    }
    f0[e] = 0.5 * ((ln[e] + rn[e]) - a * (rr[e] - lr[e]));
    fn[e] = 0.5 * ((ln[e] * ul + pl) + (rn[e] * ur + pr) - a * (rn[e] - ln[e]));
    ft[e] = 0.5 * (lt[e] * ul + rt[e] * ur - a * (rt[e] - lt[e]));
    f3[e] = 0.5 * (ul * (le[e] + pl) + ur * (re[e] + pr) - a * (re[e] - le[e]));
  }
  return ok;
}

void roe_range(const InterfaceArray& ql, const InterfaceArray& qr, InterfaceArray& f,
               std::size_t begin, std::size_t end, Axis axis, double gamma) {
  for (std::size_t e = begin; e < end; ++e) {
    ConservedState l;
    ConservedState r;
    for (int var = 0; var < kNumVars; ++var) {
      l[var] = ql.data(var)[e];
      r[var] = qr.data(var)[e];
    }
    ConservedState out;
    try {
      out = roe_flux(l, r, axis, gamma);
    } catch (const UnphysicalState& err) {
      throw UnphysicalState(err.what(), l, where(ql, e, "Roe problem left"));
    }
    for (int var = 0; var < kNumVars; ++var) f.data(var)[e] = out[var];
  }
}

// One numerical flux per interface element.
void interface_flux(const InterfaceArray& ql, const InterfaceArray& qr, InterfaceArray& f,
                    FluxKind kind, Axis axis, double alpha, double gamma) {
  if (!f.same_shape(ql)) f = InterfaceArray(ql.axis(), ql.normal_faces(), ql.transverse_cells(),
                                            ql.transverse_ext());
  const LineRange lr = line_range(ql);
  const auto len = static_cast<std::size_t>(lr.length);
  std::vector<char> bad(static_cast<std::size_t>(lr.lines), 0);
  parallel_for(0, lr.lines, [&](int line) {
    const std::size_t begin = static_cast<std::size_t>(line) * len;
    const std::size_t end = begin + len;
    if (kind == FluxKind::LaxFriedrichs) {
      if (!lf_range(ql, qr, f, begin, end, axis == Axis::X ? 1 : 2, alpha, gamma)) bad[line] = 1;
      return;
    }
    if (first_unphysical(ql, begin, end, gamma) != end ||
        first_unphysical(qr, begin, end, gamma) != end) {
      bad[line] = 1;
      return;
    }
    roe_range(ql, qr, f, begin, end, axis, gamma);
  });
  for (int line = 0; line < lr.lines; ++line) {
    if (!bad[line]) continue;
    const std::size_t begin = static_cast<std::size_t>(line) * len;
    const std::size_t end = begin + len;
    for (const auto* q : {&ql, &qr}) {
      const std::size_t e = first_unphysical(*q, begin, end, gamma);
      if (e == end) continue;
      ConservedState state;
      for (int var = 0; var < kNumVars; ++var) state[var] = q->data(var)[e];
      throw UnphysicalState("reconstructed interface state is unphysical", state,
                            where(*q, e, q == &ql ? "left" : "right"));
    }
  }
}

}  // namespace

Solver::Solver(SchemeConfig config) : config_(config) { config_.validate(); }

void Solver::sweep(const CellField& field, Axis axis, double alpha, AxisWork& work) {
  const auto order = config_.transform_order();
  const int t = order ? transform_halfwidth(*order) : 0;
  reconstruct_field_direction(field, axis, config_.scheme, 2 * t, work.rec);
  if (!order) {
    interface_flux(work.rec.minus, work.rec.plus, work.flux, config_.flux, axis, alpha,
                   config_.gamma);
    return;
  }
  transverse(*order, true, work.rec.minus, work.point_minus);
  transverse(*order, true, work.rec.plus, work.point_plus);
  interface_flux(work.point_minus, work.point_plus, work.point_flux, config_.flux, axis, alpha,
                 config_.gamma);
  transverse(*order, false, work.point_flux, work.flux);
}

void Solver::compute_rhs(const CellField& field, Tendency& out) {
  const GridSpec& s = field.spec();
  if (s.ghost() < config_.required_ghost()) {
    throw GridError("configuration " + config_.describe() + " needs ghost width " +
                    std::to_string(config_.required_ghost()) + ", grid has " +
                    std::to_string(s.ghost()));
  }
  if (!field.ghost_filled()) throw Error("compute_rhs: ghost cells are not filled");
  const int nx = s.nx();
  const int ny = s.ny();
  if (out.nx() != nx || out.ny() != ny) out = Tendency(nx, ny);

  double ax = -1.0;
  double ay = -1.0;
  if (config_.flux == FluxKind::LaxFriedrichs && config_.alpha == AlphaScope::Global) {
    ax = max_signal_speed(field, Axis::X, config_.gamma);
    ay = max_signal_speed(field, Axis::Y, config_.gamma);
  }
  sweep(field, Axis::X, ax, x_work_);
  sweep(field, Axis::Y, ay, y_work_);

  const double idx = 1.0 / s.dx();
  const double idy = 1.0 / s.dy();
  const InterfaceArray& fx = x_work_.flux;
  const InterfaceArray& gy = y_work_.flux;
  parallel_for(0, ny, [&](int j) {
    for (int var = 0; var < kNumVars; ++var) {
      const double* f = fx.ptr(var, j, 0);
      const double* g0 = gy.ptr(var, 0, j);
      const double* g1 = gy.ptr(var, 0, j + 1);
      double* o = out.row(var, j);
      for (int i = 0; i < nx; ++i) {
        o[i] = -(f[i + 1] - f[i]) * idx - (g1[i] - g0[i]) * idy;
      }
    }
  });
}

void Solver::evaluate_stage(CellField& stage, Tendency& out) {
  fill_ghost(stage, config_.bc_x, config_.bc_y);
  compute_rhs(stage, out);
}

Tendency compute_rhs(const CellField& field, const SchemeConfig& config) {
  Solver solver(config);
  Tendency out(field.spec().nx(), field.spec().ny());
  if (field.ghost_filled()) {
    solver.compute_rhs(field, out);
  } else {
    CellField copy = field;
    solver.evaluate_stage(copy, out);
  }
  return out;
}

double compute_dt(const CellField& field, const SchemeConfig& config, double t_end) {
  const GridSpec& s = field.spec();
  const double sx = max_signal_speed(field, Axis::X, config.gamma);
  const double sy = max_signal_speed(field, Axis::Y, config.gamma);
  const double rate = sx / s.dx() + sy / s.dy();
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error("compute_dt: signal speed is zero or not finite");
  }
  const double dt = config.cfl / rate;
  const double remaining = t_end - field.time();
  return remaining <= dt ? remaining : dt;
}

long long advance_inplace(CellField& field, double t_end, const SchemeConfig& config,
                          const ButcherTableau& tableau, AdvanceOptions options) {
  config.validate();
  if (t_end < field.time()) throw Error("advance_to: t_end lies before the field time");
  if (field.spec().ghost() < config.required_ghost()) {
    throw GridError("configuration " + config.describe() + " needs ghost width " +
                    std::to_string(config.required_ghost()));
  }
  Solver solver(config);
  RkWorkspace work;
  const RhsOperator rhs = [&solver](CellField& stage, Tendency& out) {
    solver.evaluate_stage(stage, out);
  };
  long long steps = 0;
  while (field.time() < t_end) {
    if (steps >= options.max_steps) {
      throw Error("advance_to: exceeded " + std::to_string(options.max_steps) + " steps");
    }
    const double dt = compute_dt(field, config, t_end);
    const bool last = dt == t_end - field.time();
    rk_step_inplace(field, rhs, tableau, dt, work);
    if (last) field.set_time(t_end);
    ++steps;
    if (options.on_step) options.on_step(steps, field.time());
  }
  return steps;
}

CellField advance_to(const CellField& field, double t_end, const SchemeConfig& config,
                     const ButcherTableau& tableau, AdvanceOptions options) {
  CellField out = field;
  advance_inplace(out, t_end, config, tableau, options);
  return out;
}

}  // namespace cartweno
