#include "cartweno/problems.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "cartweno/euler.hpp"

#ifndef CARTWENO_DATA_DIR
#define CARTWENO_DATA_DIR "data"
#endif

namespace cartweno {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVortexStrength = 5.0;
constexpr double kVortexPeriod = 14.0;

PrimitiveState linear_advect(double x, double y) {
  return {1.0 + 0.5 * std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y), 1.0, 1.0, 1.0};
}

PrimitiveState vortex(double x, double y, double gamma) {
  const double r2 = x * x + y * y;
  const double dt = -(gamma - 1.0) * kVortexStrength * kVortexStrength /
                    (8.0 * gamma * kPi * kPi) * std::exp(1.0 - r2);
  const double swirl = kVortexStrength / (2.0 * kPi) * std::exp(0.5 * (1.0 - r2));
  return {std::pow(1.0 + dt, 1.0 / (gamma - 1.0)), 1.0 - y * swirl, 1.0 + x * swirl,
          std::pow(1.0 + dt, gamma / (gamma - 1.0))};
}

PrimitiveState nonlinear_smooth(double x, double y) {
  return {1.0 + 0.5 * std::sin(kPi * (x + y)), std::cos(kPi * (x + 2.0 * y)),
          1.0 - 0.5 * std::sin(kPi * (2.0 * x + y)), 1.0 + 0.5 * std::sin(kPi * (x - y))};
}

PrimitiveState riemann_state(const RiemannSetup& s, double x, double y) {
  const bool right = x > s.x_split;
  const bool top = y > s.y_split;
  if (top) return right ? s.quadrants[0] : s.quadrants[1];
  return right ? s.quadrants[3] : s.quadrants[2];
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

void require_domain(const Problem& p, const GridSpec& spec) {
  if (!close(spec.x_min(), p.x_min) || !close(spec.x_max(), p.x_max) ||
      !close(spec.y_min(), p.y_min) || !close(spec.y_max(), p.y_max)) {
    throw GridError("grid domain does not match the domain of problem " + p.name);
  }
}

}  // namespace

PrimitiveState Problem::initial(double x, double y) const {
  switch (kind) {
    case ProblemKind::LinearAdvect:
      return linear_advect(x, y);
    case ProblemKind::IsentropicVortex:
      return vortex(x, y, gamma);
    case ProblemKind::NonlinearSmooth:
      return nonlinear_smooth(x, y);
    case ProblemKind::Riemann2D:
      return riemann_state(*riemann, x, y);
  }
  throw Error("unknown problem kind");
}

GridSpec Problem::grid(int n, int ghost) const {
  return GridSpec(n, n, x_min, x_max, y_min, y_max, ghost);
}

Problem make_problem(ProblemKind kind) {
  Problem p;
  p.kind = kind;
  switch (kind) {
    case ProblemKind::LinearAdvect:
      p.name = "linear";
      p.t_end = 1.0;
      break;
    case ProblemKind::IsentropicVortex:
      p.name = "vortex";
      p.x_min = p.y_min = -7.0;
      p.x_max = p.y_max = 7.0;
      p.t_end = kVortexPeriod;
      break;
    case ProblemKind::NonlinearSmooth:
      p.name = "smooth";
      p.x_min = p.y_min = -1.0;
      p.x_max = p.y_max = 1.0;
      p.t_end = 0.1;
      break;
    case ProblemKind::Riemann2D:
      return make_riemann_problem(load_riemann_setup(default_data_dir() / "riemann_config5.ini"));
  }
  return p;
}

Problem make_riemann_problem(const RiemannSetup& setup) {
  Problem p;
  p.kind = ProblemKind::Riemann2D;
  p.name = "riemann-" + setup.name;
  p.x_min = setup.x_min;
  p.x_max = setup.x_max;
  p.y_min = setup.y_min;
  p.y_max = setup.y_max;
  p.bc = BoundaryCondition::Extrapolate;
  p.t_end = setup.t_end;
  p.riemann = setup;
  return p;
}

RiemannSetup load_riemann_setup(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("cannot read Riemann setup: " + std::string(e.what()));
  }
  RiemannSetup s;
  try {
    s.name = tree.get<std::string>("setup.name", path.stem().string());
    s.x_split = tree.get<double>("setup.x_split");
    s.y_split = tree.get<double>("setup.y_split");
    s.t_end = tree.get<double>("setup.t_end");
    s.x_min = tree.get<double>("setup.x_min", 0.0);
    s.x_max = tree.get<double>("setup.x_max", 1.0);
    s.y_min = tree.get<double>("setup.y_min", 0.0);
    s.y_max = tree.get<double>("setup.y_max", 1.0);
    for (int k = 0; k < 4; ++k) {
      const std::string sec = "q" + std::to_string(k + 1) + ".";
      s.quadrants[k] = {tree.get<double>(sec + "rho"), tree.get<double>(sec + "u"),
                        tree.get<double>(sec + "v"), tree.get<double>(sec + "p")};
      if (!(s.quadrants[k].rho > 0.0 && s.quadrants[k].p > 0.0)) {
        throw ConfigError("quadrant " + std::to_string(k + 1) + " is not a physical state");
      }
    }
  } catch (const pt::ptree_error& e) {
    throw ConfigError("invalid Riemann setup " + path.string() + ": " + e.what());
  }
  if (!(s.t_end > 0.0)) throw ConfigError("Riemann setup needs t_end > 0");
  return s;
}

std::filesystem::path default_data_dir() { return CARTWENO_DATA_DIR; }

Problem parse_problem(std::string_view text,
                      const std::optional<std::filesystem::path>& riemann_file) {
  if (text == "linear") return make_problem(ProblemKind::LinearAdvect);
  if (text == "vortex") return make_problem(ProblemKind::IsentropicVortex);
  if (text == "smooth") return make_problem(ProblemKind::NonlinearSmooth);
  if (text == "riemann") {
    if (riemann_file) return make_riemann_problem(load_riemann_setup(*riemann_file));
    return make_problem(ProblemKind::Riemann2D);
  }
  throw ConfigError("unknown problem '" + std::string(text) +
                    "' (expected linear, vortex, smooth or riemann)");
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::LinearAdvect:
      return "linear";
    case ProblemKind::IsentropicVortex:
      return "vortex";
    case ProblemKind::NonlinearSmooth:
      return "smooth";
    case ProblemKind::Riemann2D:
      return "riemann";
  }
  return "unknown";
}

CellField init_problem(const Problem& problem, const GridSpec& spec) {
  require_domain(problem, spec);
  const double gamma = problem.gamma;
  return create_field(spec, quadrature_average([&problem, gamma](double x, double y) {
                        return prim_to_cons(problem.initial(x, y), gamma);
                      }));
}

CellField exact_solution(const Problem& problem, const GridSpec& spec, double t) {
  require_domain(problem, spec);
  if (problem.kind == ProblemKind::LinearAdvect) {
    // Reduce the shift modulo the unit period so whole periods reproduce the
    // initial field exactly.
    const double shift = std::fmod(t, 1.0);
    const double gamma = problem.gamma;
    CellField f = create_field(spec, quadrature_average([shift, gamma](double x, double y) {
                                 return prim_to_cons(linear_advect(x - shift, y - shift), gamma);
                               }));
    f.set_time(t);
    return f;
  }
  if (problem.kind == ProblemKind::IsentropicVortex) {
    const double periods = t / kVortexPeriod;
    if (std::abs(periods - std::round(periods)) > 1e-12 * std::max(1.0, periods)) {
      throw Error("vortex exact solution is only available at multiples of t = 14");
    }
    CellField f = init_problem(problem, spec);
    f.set_time(t);
    return f;
  }
  throw Error("no exact solution for problem " + problem.name);
}

}  // namespace cartweno
