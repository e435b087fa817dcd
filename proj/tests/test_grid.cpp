#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "cartweno/grid.hpp"
#include "cartweno/parallel.hpp"
#include "cartweno/problems.hpp"
#include "support.hpp"

using namespace cartweno;
using cartweno::test::uniform;

namespace {

CellField random_field(const GridSpec& spec) {
  return create_field(spec, [](int, int, const GridSpec&) {
    ConservedState q;
    for (int k = 0; k < kNumVars; ++k) q[k] = uniform(-2.0, 2.0);
    return q;
  });
}

}  // namespace

TEST_CASE("grid spec rejects empty or inverted domains") {
  CHECK_THROWS_AS(GridSpec(0, 4, 0.0, 1.0, 0.0, 1.0), GridError);
  CHECK_THROWS_AS(GridSpec(4, -1, 0.0, 1.0, 0.0, 1.0), GridError);
  CHECK_THROWS_AS(GridSpec(4, 4, 1.0, 0.0, 0.0, 1.0), GridError);
  CHECK_THROWS_AS(GridSpec(4, 4, 0.0, 1.0, 0.0, 1.0, -1), GridError);
  const GridSpec s(8, 4, -1.0, 1.0, 0.0, 2.0, 3);
  CHECK(s.dx() == 0.25);
  CHECK(s.dy() == 0.5);
  CHECK(s.xc(0) == -0.875);
  CHECK(s.y_face(4) == 2.0);
}

TEST_CASE("create_field stores constant data on every interior cell") {
  const GridSpec s(5, 3, 0.0, 1.0, 0.0, 1.0, 2);
  const ConservedState c{{1.0, 2.0, -3.0, 4.5}};
  const CellField f = create_field(s, [&](int, int, const GridSpec&) { return c; });
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 5; ++i) CHECK(f.state(i, j) == c);
  CHECK_FALSE(f.ghost_filled());
  CHECK(std::isnan(f.at(0, -1, 0)));
}

TEST_CASE("quadrature average matches the closed-form cell average") {
  // rho = 1 + sin(2 pi x) cos(2 pi y) / 2 on cell [0, h]^2.
  const int n = 64;
  const double h = 1.0 / n;
  const double k = 2.0 * std::numbers::pi;
  const double exact =
      1.0 + 0.5 * ((1.0 - std::cos(k * h)) / (k * h)) * (std::sin(k * h) / (k * h));
  const Problem p = make_problem(ProblemKind::LinearAdvect);
  const CellField f = init_problem(p, p.grid(n));
  CHECK(std::abs(f.at(0, 0, 0) - exact) <= 1e-14);
}

TEST_CASE("quadrature average is exact for degree 7 polynomials") {
  const auto cx = cartweno::test::random_poly(7);
  const auto cy = cartweno::test::random_poly(7);
  const GridSpec s(3, 3, -1.3, 0.4, 0.2, 1.1);
  const auto init = quadrature_average([&](double x, double y) {
    ConservedState q;
    q[0] = cartweno::test::poly_eval(cx, x) * cartweno::test::poly_eval(cy, y);
    return q;
  });
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const double ex = cartweno::test::poly_average(cx, s.x_face(i), s.x_face(i + 1)) *
                        cartweno::test::poly_average(cy, s.y_face(j), s.y_face(j + 1));
      CHECK(std::abs(init(i, j, s)[0] - ex) <= 1e-14);
    }
  }
}

TEST_CASE("periodic ghost cells copy the opposite interior") {
  const GridSpec s(6, 5, 0.0, 1.0, 0.0, 1.0, 3);
  CellField f = random_field(s);
  fill_ghost(f, BoundaryCondition::Periodic, BoundaryCondition::Periodic);
  CHECK(f.ghost_filled());
  for (int k = 0; k < kNumVars; ++k) {
    for (int j = -3; j < 8; ++j) {
      for (int i = -3; i < 9; ++i) {
        const int si = (i + 6) % 6;
        const int sj = (j + 5) % 5;
        CHECK(f.at(k, i, j) == f.at(k, si, sj));
      }
    }
  }
}

TEST_CASE("extrapolate ghost cells copy the nearest interior cell") {
  const GridSpec s(4, 4, 0.0, 1.0, 0.0, 1.0, 2);
  CellField f = random_field(s);
  fill_ghost(f, BoundaryCondition::Extrapolate, BoundaryCondition::Periodic);
  for (int j = -2; j < 6; ++j) {
    const int sj = (j + 4) % 4;
    CHECK(f.at(1, -2, j) == f.at(1, 0, sj));
    CHECK(f.at(1, -1, j) == f.at(1, 0, sj));
    CHECK(f.at(1, 5, j) == f.at(1, 3, sj));
  }
}

TEST_CASE("fill_ghost is idempotent") {
  const GridSpec s(7, 3, 0.0, 1.0, 0.0, 1.0, 4);
  CellField f = random_field(s);
  fill_ghost(f, BoundaryCondition::Periodic, BoundaryCondition::Extrapolate);
  CellField g = f;
  fill_ghost(g, BoundaryCondition::Periodic, BoundaryCondition::Extrapolate);
  for (int k = 0; k < kNumVars; ++k)
    for (int j = -4; j < 7; ++j)
      for (int i = -4; i < 11; ++i) CHECK(f.at(k, i, j) == g.at(k, i, j));
}

TEST_CASE("fill_ghost on a single-cell periodic grid replicates the cell") {
  const GridSpec s(1, 1, 0.0, 1.0, 0.0, 1.0, 3);
  CellField f = random_field(s);
  fill_ghost(f, BoundaryCondition::Periodic, BoundaryCondition::Periodic);
  for (int j = -3; j < 4; ++j)
    for (int i = -3; i < 4; ++i) CHECK(f.at(2, i, j) == f.at(2, 0, 0));
}

TEST_CASE("restriction averages blocks") {
  const GridSpec fine(2, 2, 0.0, 1.0, 0.0, 1.0);
  CellField f(fine);
  f.set_state(0, 0, {{1.0, 0, 0, 0}});
  f.set_state(1, 0, {{2.0, 0, 0, 0}});
  f.set_state(0, 1, {{3.0, 0, 0, 0}});
  f.set_state(1, 1, {{4.0, 0, 0, 0}});
  f.set_time(0.75);
  const CellField c = restrict_field(f, 2);
  CHECK(c.spec().nx() == 1);
  CHECK(c.at(0, 0, 0) == 2.5);
  CHECK(c.time() == 0.75);
  CHECK_THROWS_AS(restrict_field(f, 3), GridError);
  CHECK_THROWS_AS(restrict_field(f, 0), GridError);
}

TEST_CASE("restriction of exact averages of a linear function is exact") {
  const GridSpec fine(8, 8, 0.0, 1.0, 0.0, 1.0);
  const auto lin = [](double x, double y) {
    ConservedState q;
    q[0] = 3.0 * x - 2.0 * y + 0.5;
    return q;
  };
  const CellField f = create_field(fine, quadrature_average(lin));
  const CellField c = restrict_field(f, 4);
  const CellField direct = create_field(c.spec(), quadrature_average(lin));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) CHECK(std::abs(c.at(0, i, j) - direct.at(0, i, j)) <= 1e-15);
}

TEST_CASE("restriction composes") {
  const GridSpec fine(24, 12, 0.0, 1.0, 0.0, 1.0);
  const CellField f = random_field(fine);
  const CellField once = restrict_field(f, 6);
  const CellField twice = restrict_field(restrict_field(f, 2), 3);
  for (int k = 0; k < kNumVars; ++k) {
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 4; ++i) {
        const double a = once.at(k, i, j);
        const double b = twice.at(k, i, j);
        CHECK(std::abs(a - b) <= 32.0 * std::numeric_limits<double>::epsilon());
      }
    }
  }
}

TEST_CASE("l1_error measures area-weighted absolute differences") {
  const GridSpec s(4, 5, 0.0, 2.0, 0.0, 1.0);
  const CellField a = create_field(s, [](int, int, const GridSpec&) {
    return ConservedState{{1.0, 0.0, 0.0, 0.0}};
  });
  const CellField b = create_field(s, [](int, int, const GridSpec&) {
    return ConservedState{{2.0, 0.0, 0.0, 0.0}};
  });
  CHECK(l1_error(a, b, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(l1_error(a, a, 0) == 0.0);
  CHECK(l1_error(a, b, 1) == 0.0);
  CHECK_THROWS_AS(l1_error(a, b, 4), GridError);
  const CellField other(GridSpec(4, 4, 0.0, 2.0, 0.0, 1.0));
  CHECK_THROWS_AS(l1_error(a, other, 0), GridError);
}

TEST_CASE("l1_error is symmetric and independent of the thread count") {
  const GridSpec s(37, 29, 0.0, 1.0, 0.0, 1.0);
  const CellField a = random_field(s);
  const CellField b = random_field(s);
  const int before = thread_count();
  set_thread_count(1);
  const double e1 = l1_error(a, b, 2);
  set_thread_count(3);
  const double e3 = l1_error(a, b, 2);
  const double swapped = l1_error(b, a, 2);
  set_thread_count(before);
  CHECK(e1 == e3);
  CHECK(e1 == swapped);
  CHECK(e1 > 0.0);
}

TEST_CASE("pairwise_sum matches a long-double reference") {
  std::vector<double> v(1001);
  long double ref = 0.0L;
  for (double& x : v) {
    x = uniform(0.0, 1.0);
    ref += x;
  }
  CHECK(std::abs(pairwise_sum(v) - static_cast<double>(ref)) <= 1e-12);
  CHECK(pairwise_sum({}) == 0.0);
}
