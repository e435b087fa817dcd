#include "cartweno/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "cartweno/parallel.hpp"

namespace cartweno {

std::string to_string(const ConservedState& q) {
  std::ostringstream os;
  os.precision(17);
  os << "(rho=" << q[0] << ", mx=" << q[1] << ", my=" << q[2] << ", E=" << q[3] << ")";
  return os.str();
}

GridSpec::GridSpec(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
                   int ghost)
    : nx_(nx), ny_(ny), x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max),
      ghost_(ghost), dx_(0.0), dy_(0.0) {
  if (nx < 1 || ny < 1) throw GridError("grid needs at least one cell per axis");
  if (ghost < 0) throw GridError("ghost width must be non-negative");
  if (!(x_max > x_min) || !(y_max > y_min)) throw GridError("domain bounds are inverted or empty");
  dx_ = (x_max - x_min) / nx;
  dy_ = (y_max - y_min) / ny;
}

GridSpec GridSpec::resized(int nx, int ny) const {
  return GridSpec(nx, ny, x_min_, x_max_, y_min_, y_max_, ghost_);
}

GridSpec GridSpec::with_ghost(int ghost) const {
  return GridSpec(nx_, ny_, x_min_, x_max_, y_min_, y_max_, ghost);
}

Tendency::Tendency(int nx, int ny) : nx_(nx), ny_(ny) {
  for (auto& p : planes_) p.assign(static_cast<std::size_t>(nx) * ny, 0.0);
}

ConservedState Tendency::state(int i, int j) const noexcept {
  ConservedState q;
  for (int k = 0; k < kNumVars; ++k) q[k] = at(k, i, j);
  return q;
}

void Tendency::fill(double value) {
  for (auto& p : planes_) std::fill(p.begin(), p.end(), value);
}

CellField::CellField(const GridSpec& spec)
    : spec_(spec), pitch_(spec.nx() + 2 * spec.ghost()) {
  const auto size = static_cast<std::size_t>(pitch_) * (spec.ny() + 2 * spec.ghost());
  for (auto& p : planes_) p.assign(size, std::numeric_limits<double>::quiet_NaN());
}

ConservedState CellField::state(int i, int j) const noexcept {
  ConservedState q;
  for (int k = 0; k < kNumVars; ++k) q[k] = at(k, i, j);
  return q;
}

void CellField::set_state(int i, int j, const ConservedState& q) noexcept {
  for (int k = 0; k < kNumVars; ++k) at(k, i, j) = q[k];
  ghost_filled_ = false;
}

bool CellField::interior_equals(const CellField& other) const noexcept {
  if (!(spec_ == other.spec_)) return false;
  for (int k = 0; k < kNumVars; ++k) {
    for (int j = 0; j < spec_.ny(); ++j) {
      const double* a = row(k, j);
      const double* b = other.row(k, j);
      for (int i = 0; i < spec_.nx(); ++i) {
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
      }
    }
  }
  return true;
}

CellInitializer quadrature_average(PointwiseData data) {
  return [data = std::move(data)](int i, int j, const GridSpec& spec) {
    // 4-point Gauss-Legendre nodes/weights on [-1/2, 1/2].
    static constexpr double kA = 0.3399810435848562648026658;
    static constexpr double kB = 0.8611363115940525752239465;
    static constexpr double kWa = 0.6521451548625461426269361;
    static constexpr double kWb = 0.3478548451374538573730639;
    static constexpr std::array<double, 4> kNode{-0.5 * kB, -0.5 * kA, 0.5 * kA, 0.5 * kB};
    static constexpr std::array<double, 4> kWeight{0.5 * kWb, 0.5 * kWa, 0.5 * kWa, 0.5 * kWb};
    const double xc = spec.xc(i);
    const double yc = spec.yc(j);
    ConservedState avg;
    for (int b = 0; b < 4; ++b) {
      ConservedState line;
      for (int a = 0; a < 4; ++a) {
        const ConservedState q = data(xc + kNode[a] * spec.dx(), yc + kNode[b] * spec.dy());
        for (int k = 0; k < kNumVars; ++k) line[k] += kWeight[a] * q[k];
      }
      for (int k = 0; k < kNumVars; ++k) avg[k] += kWeight[b] * line[k];
    }
    return avg;
  };
}

CellField create_field(const GridSpec& spec, const CellInitializer& init) {
  CellField field(spec);
  parallel_for(0, spec.ny(), [&](int j) {
    for (int i = 0; i < spec.nx(); ++i) {
      const ConservedState q = init(i, j, spec);
      for (int k = 0; k < kNumVars; ++k) field.at(k, i, j) = q[k];
    }
  });
  field.set_time(0.0);
  field.mark_ghost_filled(false);
  return field;
}

namespace {

// Source index along an axis of length n for ghost index g outside [0, n).
int source_index(int g, int n, BoundaryCondition bc) noexcept {
  if (bc == BoundaryCondition::Periodic) {
    const int m = g % n;
    return m < 0 ? m + n : m;
  }
  return g < 0 ? 0 : n - 1;
}

}  // namespace

void fill_ghost(CellField& field, BoundaryCondition bc_x, BoundaryCondition bc_y) {
  const GridSpec& s = field.spec();
  const int g = s.ghost();
  const int nx = s.nx();
  const int ny = s.ny();
  if (g == 0) {
    field.mark_ghost_filled(true);
    return;
  }
  for (int k = 0; k < kNumVars; ++k) {
    for (int j = 0; j < ny; ++j) {
      double* r = field.row(k, j);
      for (int i = 1; i <= g; ++i) {
        r[-i] = r[source_index(-i, nx, bc_x)];
        r[nx - 1 + i] = r[source_index(nx - 1 + i, nx, bc_x)];
      }
    }
    for (int jg = 1; jg <= g; ++jg) {
      const int lo = -jg;
      const int hi = ny - 1 + jg;
      const double* src_lo = field.row(k, source_index(lo, ny, bc_y));
      const double* src_hi = field.row(k, source_index(hi, ny, bc_y));
      double* dst_lo = field.row(k, lo);
      double* dst_hi = field.row(k, hi);
      for (int i = -g; i < nx + g; ++i) {
        dst_lo[i] = src_lo[i];
        dst_hi[i] = src_hi[i];
      }
    }
  }
  field.mark_ghost_filled(true);
}

CellField restrict_field(const CellField& fine, int factor) {
  const GridSpec& fs = fine.spec();
  if (factor < 1) throw GridError("restriction factor must be positive");
  if (fs.nx() % factor != 0 || fs.ny() % factor != 0) {
    throw GridError("grid dimensions are not divisible by the restriction factor");
  }
  const GridSpec cs = fs.resized(fs.nx() / factor, fs.ny() / factor);
  CellField coarse(cs);
  const double inv = 1.0 / (static_cast<double>(factor) * factor);
  parallel_for(0, cs.ny(), [&](int jc) {
    for (int k = 0; k < kNumVars; ++k) {
      for (int ic = 0; ic < cs.nx(); ++ic) {
        double sum = 0.0;
        for (int b = 0; b < factor; ++b) {
          const double* r = fine.row(k, jc * factor + b);
          for (int a = 0; a < factor; ++a) sum += r[ic * factor + a];
        }
        coarse.at(k, ic, jc) = sum * inv;
      }
    }
  });
  coarse.set_time(fine.time());
  return coarse;
}

double l1_error(const CellField& a, const CellField& b, int var) {
  if (!(a.spec() == b.spec())) throw GridError("l1_error: fields live on different grids");
  if (var < 0 || var >= kNumVars) throw GridError("l1_error: variable index out of range");
  const GridSpec& s = a.spec();
  std::vector<double> row_sums(static_cast<std::size_t>(s.ny()));
  parallel_for(0, s.ny(), [&](int j) {
    std::vector<double> diff(static_cast<std::size_t>(s.nx()));
    const double* ra = a.row(var, j);
    const double* rb = b.row(var, j);
    for (int i = 0; i < s.nx(); ++i) diff[i] = std::abs(ra[i] - rb[i]);
    row_sums[j] = pairwise_sum(diff);
  });
  return s.dx() * s.dy() * pairwise_sum(row_sums);
}

}  // namespace cartweno
