#include "cartweno/rk.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "cartweno/parallel.hpp"

namespace cartweno {

namespace {

struct Ratio {
  long long num;
  long long den;
  [[nodiscard]] double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

ButcherTableau make_tableau(std::string name, int s, const std::vector<std::vector<Ratio>>& rows,
                            const std::vector<Ratio>& b) {
  ButcherTableau t;
  t.name = std::move(name);
  t.stages = s;
  t.a.assign(static_cast<std::size_t>(s) * s, 0.0);
  t.b.resize(static_cast<std::size_t>(s));
  t.c.assign(static_cast<std::size_t>(s), 0.0);
  for (int i = 0; i < s; ++i) {
    // c_i as the row sum of the stored coefficients, so the row-sum
    // condition holds for the rounded tableau.
    long double sum = 0.0L;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const double a = rows[i][j].value();
      t.a[static_cast<std::size_t>(i) * s + j] = a;
      sum += a;
    }
    t.c[i] = static_cast<double>(sum);
    t.b[i] = b[i].value();
  }
  return t;
}

}  // namespace

ButcherTableau tableau_rk5() {
  return make_tableau(
      "rk5", 6,
      {
          {},
          {{1, 4}},
          {{1, 8}, {1, 8}},
          {{0, 1}, {-1, 2}, {1, 1}},
          {{3, 16}, {0, 1}, {0, 1}, {9, 16}},
          {{-3, 7}, {2, 7}, {12, 7}, {-12, 7}, {8, 7}},
      },
      {{7, 90}, {0, 1}, {32, 90}, {12, 90}, {32, 90}, {7, 90}});
}

ButcherTableau tableau_rk7() {
  return make_tableau(
      "rk7", 11,
      {
          {},
          {{2, 27}},
          {{1, 36}, {1, 12}},
          {{1, 24}, {0, 1}, {1, 8}},
          {{5, 12}, {0, 1}, {-25, 16}, {25, 16}},
          {{1, 20}, {0, 1}, {0, 1}, {1, 4}, {1, 5}},
          {{-25, 108}, {0, 1}, {0, 1}, {125, 108}, {-65, 27}, {125, 54}},
          {{31, 300}, {0, 1}, {0, 1}, {0, 1}, {61, 225}, {-2, 9}, {13, 900}},
          {{2, 1}, {0, 1}, {0, 1}, {-53, 6}, {704, 45}, {-107, 9}, {67, 90}, {3, 1}},
          {{-91, 108}, {0, 1}, {0, 1}, {23, 108}, {-976, 135}, {311, 54}, {-19, 60}, {17, 6},
           {-1, 12}},
          {{2383, 4100}, {0, 1}, {0, 1}, {-341, 164}, {4496, 1025}, {-301, 82}, {2133, 4100},
           {45, 82}, {45, 164}, {18, 41}},
      },
      {{41, 840}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {34, 105}, {9, 35}, {9, 35}, {9, 280},
       {9, 280}, {41, 840}});
}

CellField rk_step(const CellField& state, const RhsOperator& rhs, const ButcherTableau& tableau,
                  double dt) {
  CellField out = state;
  RkWorkspace work;
  rk_step_inplace(out, rhs, tableau, dt, work);
  return out;
}

void rk_step_inplace(CellField& state, const RhsOperator& rhs, const ButcherTableau& tableau,
                     double dt, RkWorkspace& work) {
  const GridSpec& s = state.spec();
  const int stages = tableau.stages;
  const int nx = s.nx();
  const int ny = s.ny();
  if (static_cast<int>(work.k.size()) != stages || work.k.front().nx() != nx ||
      work.k.front().ny() != ny) {
    work.k.assign(static_cast<std::size_t>(stages), Tendency(nx, ny));
  }
  if (!work.stage || !(work.stage->spec() == s)) work.stage = std::make_unique<CellField>(s);
  CellField& y = *work.stage;
  const double t0 = state.time();

  for (int i = 0; i < stages; ++i) {
    // Y_i = Q + dt * sum_{j<i} a_ij K_j (zero coefficients skipped).
    parallel_for(0, ny, [&](int j) {
      for (int var = 0; var < kNumVars; ++var) {
        const double* q = state.row(var, j);
        double* dst = y.row(var, j);
        std::copy(q, q + nx, dst);
        for (int l = 0; l < i; ++l) {
          const double a = tableau.coeff(i, l);
          if (a == 0.0) continue;
          const double w = dt * a;
          const double* k = work.k[l].row(var, j);
          for (int c = 0; c < nx; ++c) dst[c] += w * k[c];
        }
      }
    });
    y.set_time(t0 + tableau.c[i] * dt);
    y.mark_ghost_filled(false);
    try {
      rhs(y, work.k[i]);
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(i, e.what());
    }
  }

  parallel_for(0, ny, [&](int j) {
    for (int var = 0; var < kNumVars; ++var) {
      double* q = state.row(var, j);
      for (int l = 0; l < stages; ++l) {
        const double b = tableau.b[l];
        if (b == 0.0) continue;
        const double w = dt * b;
        const double* k = work.k[l].row(var, j);
        for (int c = 0; c < nx; ++c) q[c] += w * k[c];
      }
    }
  });
  state.set_time(t0 + dt);
  state.mark_ghost_filled(false);
}

std::complex<double> stability_function(const ButcherTableau& tableau, std::complex<double> z) {
  const int s = tableau.stages;
  std::vector<std::complex<double>> k(static_cast<std::size_t>(s));
  std::complex<double> sum = 0.0;
  for (int i = 0; i < s; ++i) {
    std::complex<double> acc = 1.0;
    for (int j = 0; j < i; ++j) acc += z * tableau.coeff(i, j) * k[j];
    k[i] = acc;
    sum += tableau.b[i] * acc;
  }
  return 1.0 + z * sum;
}

std::vector<double> stability_polynomial(const ButcherTableau& tableau) {
  const int s = tableau.stages;
  std::vector<double> coeffs(static_cast<std::size_t>(s) + 1, 0.0);
  coeffs[0] = 1.0;
  std::vector<double> vec(static_cast<std::size_t>(s), 1.0);  // A^{m-1} 1
  for (int m = 1; m <= s; ++m) {
    double dot = 0.0;
    for (int i = 0; i < s; ++i) dot += tableau.b[i] * vec[i];
    coeffs[m] = dot;
    std::vector<double> next(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < i; ++j) next[i] += tableau.coeff(i, j) * vec[j];
    }
    vec = std::move(next);
  }
  return coeffs;
}

}  // namespace cartweno
