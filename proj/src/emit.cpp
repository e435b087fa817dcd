#include "cartweno/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cartweno/euler.hpp"

namespace cartweno {

namespace {

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to " + path.string() + " failed");
}

}  // namespace

std::vector<unsigned char> schlieren_pixels(const CellField& field) {
  const GridSpec& s = field.spec();
  const int nx = s.nx();
  const int ny = s.ny();
  std::vector<double> grad(static_cast<std::size_t>(nx) * ny, 0.0);
  auto rho = [&](int i, int j) { return field.at(0, i, j); };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int il = std::max(i - 1, 0);
      const int ir = std::min(i + 1, nx - 1);
      const int jl = std::max(j - 1, 0);
      const int jr = std::min(j + 1, ny - 1);
      const double gx = ir > il ? (rho(ir, j) - rho(il, j)) / ((ir - il) * s.dx()) : 0.0;
      const double gy = jr > jl ? (rho(i, jr) - rho(i, jl)) / ((jr - jl) * s.dy()) : 0.0;
      grad[static_cast<std::size_t>(j) * nx + i] = std::hypot(gx, gy);
    }
  }
  const double gmax = *std::max_element(grad.begin(), grad.end());
  std::vector<unsigned char> px(grad.size(), 255);
  if (!(gmax > 0.0)) return px;
  for (int j = 0; j < ny; ++j) {
    const int row = ny - 1 - j;
    for (int i = 0; i < nx; ++i) {
      const double g = grad[static_cast<std::size_t>(j) * nx + i] / gmax;
      px[static_cast<std::size_t>(row) * nx + i] =
          static_cast<unsigned char>(std::lround(255.0 * (1.0 - g)));
    }
  }
  return px;
}

void emit_schlieren(const CellField& field, const std::filesystem::path& path) {
  const auto px = schlieren_pixels(field);
  std::ofstream out = open_out(path, std::ios::binary);
  out << "P5\n" << field.spec().nx() << ' ' << field.spec().ny() << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  finish(out, path);
}

std::vector<std::complex<double>> stability_boundary(const ButcherTableau& tableau, int angles,
                                                     double tol) {
  constexpr double kStep = 0.01;
  constexpr double kMaxRadius = 20.0;
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(angles));
  for (int k = 0; k < angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / angles;
    const std::complex<double> dir = std::polar(1.0, theta);
    auto outside = [&](double r) { return std::abs(stability_function(tableau, r * dir)) > 1.0; };
    double lo = 0.0;
    double hi = kStep;
    while (!outside(hi)) {
      lo = hi;
      hi += kStep;
      if (hi > kMaxRadius) break;
    }
    if (hi > kMaxRadius) continue;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (outside(mid) ? hi : lo) = mid;
    }
    out.push_back(0.5 * (lo + hi) * dir);
  }
  return out;
}

void emit_stability_region(const ButcherTableau& tableau, const std::filesystem::path& path) {
  std::ofstream out = open_out(path, std::ios::out);
  out << "re,im\n";
  char buf[64];
  for (const auto& z : stability_boundary(tableau)) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", z.real(), z.imag());
    out << buf;
  }
  finish(out, path);
}

void emit_field_csv(const CellField& field, const std::filesystem::path& path, double gamma) {
  const GridSpec& s = field.spec();
  std::ofstream out = open_out(path, std::ios::out);
  out << "x,y,rho,u,v,p\n";
  char buf[160];
  for (int j = 0; j < s.ny(); ++j) {
    for (int i = 0; i < s.nx(); ++i) {
      const PrimitiveState w = cons_to_prim(field.state(i, j), gamma);
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12g,%.12g,%.12g,%.12g\n", s.xc(i), s.yc(j),
                    w.rho, w.u, w.v, w.p);
      out << buf;
    }
  }
  finish(out, path);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_out(path, std::ios::out);
  out << text;
  finish(out, path);
}

}  // namespace cartweno
