#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cartweno/euler.hpp"
#include "cartweno/parallel.hpp"
#include "cartweno/problems.hpp"
#include "cartweno/solver.hpp"
#include "support.hpp"

using namespace cartweno;
namespace t = cartweno::test;

namespace {

constexpr Method kMethods[] = {Method::Method1, Method::Method2, Method::Method3};

SchemeConfig config_for(const char* scheme, Method m, FluxKind flux = FluxKind::LaxFriedrichs) {
  SchemeConfig c;
  c.scheme = ReconstructionScheme::parse(scheme);
  c.method = m;
  c.flux = flux;
  return c;
}

// Smooth periodic field on [0,1]^2 with all four components varying.
CellField smooth_field(int n) {
  const GridSpec spec(n, n, 0.0, 1.0, 0.0, 1.0, 4);
  const double k = 2.0 * std::numbers::pi;
  return create_field(spec, quadrature_average([k](double x, double y) {
    return prim_to_cons(PrimitiveState{1.0 + 0.2 * std::sin(k * x) * std::cos(k * y),
                                       0.5 + 0.1 * std::cos(k * y), -0.3 + 0.1 * std::sin(k * x),
                                       1.0 + 0.1 * std::sin(k * (x + y))},
                        1.4);
  }));
}

}  // namespace

TEST_CASE("config helpers") {
  CHECK(parse_method("2") == Method::Method2);
  CHECK(parse_method("method3") == Method::Method3);
  CHECK_THROWS_AS(parse_method("4"), ConfigError);
  AlphaScope scope = AlphaScope::Local;
  CHECK(parse_flux("lf-global", &scope) == FluxKind::LaxFriedrichs);
  CHECK(scope == AlphaScope::Global);
  CHECK(parse_flux("lf", &scope) == FluxKind::LaxFriedrichs);
  CHECK(scope == AlphaScope::Local);
  CHECK(parse_flux("roe") == FluxKind::RoeHH);
  CHECK_THROWS_AS(parse_flux("hllc"), ConfigError);
  CHECK(config_for("z5", Method::Method1).required_ghost() == 3);
  CHECK(config_for("z5", Method::Method2).required_ghost() == 3);
  CHECK(config_for("z5", Method::Method3).required_ghost() == 4);
  CHECK(config_for("js7", Method::Method1).required_ghost() == 4);
  CHECK(config_for("z7", Method::Method3).required_ghost() == 4);
  CHECK(config_for("z5", Method::Method2).transverse_width() == 2);
  SchemeConfig bad = config_for("z5", Method::Method1);
  bad.cfl = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.cfl = 0.5;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("free stream is preserved exactly") {
  const GridSpec spec(12, 10, 0.0, 1.0, -0.5, 0.5, 4);
  const ConservedState q = prim_to_cons(PrimitiveState{1.3, 0.4, -0.7, 0.9}, 1.4);
  CellField f = create_field(spec, [&](int, int, const GridSpec&) { return q; });
  for (const char* scheme : {"js5", "z5", "js7", "z7"}) {
    for (const Method m : kMethods) {
      for (const FluxKind flux : {FluxKind::LaxFriedrichs, FluxKind::RoeHH}) {
        const Tendency d = compute_rhs(f, config_for(scheme, m, flux));
        for (int k = 0; k < kNumVars; ++k)
          for (int j = 0; j < 10; ++j)
            for (int i = 0; i < 12; ++i) CHECK(d.at(k, i, j) == 0.0);
      }
    }
  }
  // 100 steps leave the state bitwise unchanged.
  SchemeConfig c = config_for("z5", Method::Method3);
  const double dt = compute_dt(f, c);
  CellField g = advance_to(f, 100.0 * dt * (1.0 - 1e-12), c, tableau_rk5());
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 12; ++i) CHECK(g.state(i, j) == q);
}

TEST_CASE("tendencies sum to zero on periodic grids") {
  const CellField f = smooth_field(16);
  const GridSpec& s = f.spec();
  for (const Method m : kMethods) {
    for (const FluxKind flux : {FluxKind::LaxFriedrichs, FluxKind::RoeHH}) {
      const Tendency d = compute_rhs(f, config_for("z5", m, flux));
      for (int k = 0; k < kNumVars; ++k) {
        long double total = 0.0L;
        long double scale = 0.0L;
        for (int j = 0; j < s.ny(); ++j) {
          for (int i = 0; i < s.nx(); ++i) {
            total += d.at(k, i, j) * s.dx() * s.dy();
            const auto fq = physical_flux(f.state(i, j), Axis::X, 1.4);
            const auto gq = physical_flux(f.state(i, j), Axis::Y, 1.4);
            scale += (std::abs(fq[k]) / s.dx() + std::abs(gq[k]) / s.dy()) * s.dx() * s.dy();
          }
        }
        CHECK(std::abs(static_cast<double>(total)) <= 1e-13 * static_cast<double>(scale));
      }
    }
  }
}

TEST_CASE("methods agree on data varying in x only") {
  const GridSpec spec(16, 6, 0.0, 1.0, 0.0, 1.0, 4);
  const double k = 2.0 * std::numbers::pi;
  const CellField f = create_field(spec, [&](int i, int, const GridSpec& s) {
    return prim_to_cons(PrimitiveState{1.0 + 0.3 * std::sin(k * s.xc(i)), 0.7, 0.2,
                                       1.0 + 0.1 * std::cos(k * s.xc(i))},
                        1.4);
  });
  for (const char* scheme : {"z5", "js7"}) {
    const Tendency d1 = compute_rhs(f, config_for(scheme, Method::Method1));
    for (const Method m : {Method::Method2, Method::Method3}) {
      const Tendency dm = compute_rhs(f, config_for(scheme, m));
      for (int var = 0; var < kNumVars; ++var)
        for (int j = 0; j < 6; ++j)
          for (int i = 0; i < 16; ++i) CHECK(dm.at(var, i, j) == d1.at(var, i, j));
    }
  }
}

TEST_CASE("methods differ on genuinely two-dimensional data") {
  const CellField f = smooth_field(16);
  const Tendency d1 = compute_rhs(f, config_for("z5", Method::Method1));
  const Tendency d2 = compute_rhs(f, config_for("z5", Method::Method2));
  double diff = 0.0;
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i) diff = std::max(diff, std::abs(d1.at(1, i, j) - d2.at(1, i, j)));
  CHECK(diff > 1e-6);
}

TEST_CASE("tendency is independent of the thread count") {
  const CellField f = smooth_field(24);
  const int before = thread_count();
  for (const Method m : kMethods) {
    set_thread_count(1);
    const Tendency a = compute_rhs(f, config_for("z7", m, FluxKind::RoeHH));
    set_thread_count(3);
    const Tendency b = compute_rhs(f, config_for("z7", m, FluxKind::RoeHH));
    for (int k = 0; k < kNumVars; ++k)
      for (int j = 0; j < 24; ++j)
        for (int i = 0; i < 24; ++i) CHECK(a.at(k, i, j) == b.at(k, i, j));
  }
  set_thread_count(before);
}

TEST_CASE("density tendency converges to the exact flux divergence") {
  // Example 1 at t = 0: every component's tendency is minus the cell average
  // of rho_x + rho_y, written through face averages.
  const Problem p = make_problem(ProblemKind::LinearAdvect);
  const double k = 2.0 * std::numbers::pi;
  for (const Method m : kMethods) {
    std::vector<double> errors;
    for (int n : {32, 64, 128}) {
      const CellField f = init_problem(p, p.grid(n));
      const Tendency d = compute_rhs(f, config_for("z5", m));
      const GridSpec& s = f.spec();
      double err = 0.0;
      for (int j = 0; j < n; ++j) {
        const double cy = (std::sin(k * s.y_face(j + 1)) - std::sin(k * s.y_face(j))) / (k * s.dy());
        for (int i = 0; i < n; ++i) {
          const double sx = (std::cos(k * s.x_face(i)) - std::cos(k * s.x_face(i + 1))) / (k * s.dx());
          const double fx = 0.5 * (std::sin(k * s.x_face(i + 1)) - std::sin(k * s.x_face(i))) * cy / s.dx();
          const double gy = 0.5 * sx * (std::cos(k * s.y_face(j + 1)) - std::cos(k * s.y_face(j))) / s.dy();
          err = std::max(err, std::abs(d.at(0, i, j) + fx + gy));
        }
      }
      errors.push_back(err);
    }
    const double slope = std::log2(errors[1] / errors[2]);
    MESSAGE(to_string(m), " divergence errors ", errors[0], " ", errors[1], " ", errors[2],
            " slope ", slope);
    CHECK(slope >= (m == Method::Method2 ? 3.5 : 4.5));
  }
}

TEST_CASE("time step follows the CFL formula") {
  const GridSpec spec(10, 10, 0.0, 1.0, 0.0, 1.0, 4);
  const ConservedState q = prim_to_cons(PrimitiveState{1.0, 1.0, 1.0, 1.0}, 1.4);
  const CellField f = create_field(spec, [&](int, int, const GridSpec&) { return q; });
  const SchemeConfig c = config_for("z5", Method::Method1);
  const double h = 0.1;
  const double expected = 0.9 * h / (2.0 * (1.0 + std::sqrt(1.4)));
  CHECK(compute_dt(f, c) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(compute_dt(f, c) / h == doctest::Approx(0.20612).epsilon(1e-4));
  const CellField fine = create_field(spec.resized(20, 20), [&](int, int, const GridSpec&) { return q; });
  CHECK(compute_dt(fine, c) == doctest::Approx(0.5 * expected).epsilon(1e-14));
  CHECK(compute_dt(f, c, 0.001) == 0.001);
}

TEST_CASE("advance_to reaches t_end exactly") {
  const Problem p = make_problem(ProblemKind::LinearAdvect);
  const CellField f = init_problem(p, p.grid(16));
  const SchemeConfig c = config_for("z5", Method::Method2);
  CHECK(advance_to(f, 0.0, c, tableau_rk5()).interior_equals(f));
  long long calls = 0;
  double last_time = 0.0;
  AdvanceOptions opt;
  opt.on_step = [&](long long n, double time) {
    calls = n;
    last_time = time;
  };
  const CellField g = advance_to(f, 0.123, c, tableau_rk5(), opt);
  CHECK(g.time() == 0.123);
  CHECK(last_time == 0.123);
  CHECK(calls > 1);
  AdvanceOptions tight;
  tight.max_steps = 2;
  CHECK_THROWS_AS(advance_to(f, 0.5, c, tableau_rk5(), tight), Error);
  CellField later = f;
  later.set_time(1.0);
  CHECK_THROWS_AS(advance_to(later, 0.5, c, tableau_rk5()), Error);
}

TEST_CASE("mass, momentum and energy are conserved over a vortex run") {
  const Problem p = make_problem(ProblemKind::IsentropicVortex);
  const CellField f = init_problem(p, p.grid(32));
  const auto totals = [](const CellField& g) {
    std::vector<long double> out(kNumVars, 0.0L);
    for (int k = 0; k < kNumVars; ++k)
      for (int j = 0; j < g.spec().ny(); ++j)
        for (int i = 0; i < g.spec().nx(); ++i) out[k] += g.at(k, i, j);
    return out;
  };
  for (const Method m : kMethods) {
    const CellField g = advance_to(f, 1.0, config_for("z5", m), tableau_rk5());
    const auto a = totals(f);
    const auto b = totals(g);
    for (int k = 0; k < kNumVars; ++k) {
      const long double scale = std::max(std::abs(a[k]), static_cast<long double>(f.spec().nx() * f.spec().ny()));
      CHECK(static_cast<double>(std::abs(b[k] - a[k]) / scale) <= 1e-12);
    }
  }
}

TEST_CASE("ghost requirements are enforced") {
  const GridSpec thin(8, 8, 0.0, 1.0, 0.0, 1.0, 3);
  CellField f = create_field(thin, [](int, int, const GridSpec&) {
    return prim_to_cons(PrimitiveState{1.0, 0.0, 0.0, 1.0}, 1.4);
  });
  Solver ok(config_for("z5", Method::Method2));
  Tendency out;
  CHECK_THROWS_AS(ok.compute_rhs(f, out), Error);  // ghost cells not filled
  CHECK_NOTHROW(ok.evaluate_stage(f, out));
  Solver wide(config_for("z5", Method::Method3));
  CHECK_THROWS_AS(wide.compute_rhs(f, out), GridError);
  CHECK_THROWS_AS(advance_to(f, 0.1, config_for("z7", Method::Method1), tableau_rk7()), GridError);
}

TEST_CASE("unphysical reconstructions report the interface") {
  const GridSpec spec(12, 4, 0.0, 1.0, 0.0, 1.0, 4);
  CellField f = create_field(spec, [](int i, int, const GridSpec&) {
    const bool dense = i < 6;
    return prim_to_cons(PrimitiveState{dense ? 1.0 : 1e-6, 0.0, 0.0, dense ? 1.0 : 1e-6}, 1.4);
  });
  SchemeConfig c = config_for("lin5", Method::Method1, FluxKind::RoeHH);
  c.bc_x = BoundaryCondition::Extrapolate;
  try {
    (void)compute_rhs(f, c);
    FAIL("expected UnphysicalState");
  } catch (const UnphysicalState& e) {
    MESSAGE(std::string(e.what()));
    CHECK(e.where().find("x-interface") != std::string::npos);
  }
}

TEST_CASE("Riemann configuration stays physical on a coarse grid") {
  const Problem p = make_problem(ProblemKind::Riemann2D);
  for (const Method m : kMethods) {
    SchemeConfig c = config_for("js5", m, FluxKind::RoeHH);
    c.bc_x = c.bc_y = p.bc;
    const CellField g = advance_to(init_problem(p, p.grid(32)), p.t_end, c, tableau_rk5());
    for (int j = 0; j < 32; ++j) {
      for (int i = 0; i < 32; ++i) {
        const ConservedState q = g.state(i, j);
        REQUIRE(std::isfinite(q[3]));
        CHECK(q.rho() > 0.0);
        CHECK(pressure(q, 1.4) > 0.0);
      }
    }
  }
}
