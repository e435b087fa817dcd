#include "cartweno/euler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cartweno/parallel.hpp"

namespace cartweno {

namespace {

// Swap momentum components so y-direction quantities can reuse x code.
ConservedState swap_xy(const ConservedState& q) noexcept {
  return ConservedState{{q[0], q[2], q[1], q[3]}};
}

void require_physical(const ConservedState& q, double gamma, const char* where) {
  if (!(q.rho() > 0.0)) throw UnphysicalState("non-positive density", q, where);
  if (!(pressure(q, gamma) > 0.0)) throw UnphysicalState("non-positive pressure", q, where);
}

ConservedState x_flux(const ConservedState& q, double gamma) noexcept {
  const double u = q.mx() / q.rho();
  const double p = pressure(q, gamma);
  return ConservedState{{q.mx(), q.mx() * u + p, q.my() * u, u * (q.energy() + p)}};
}

ConservedState roe_x(const ConservedState& ql, const ConservedState& qr, double gamma) {
  const double rl = ql.rho();
  const double rr = qr.rho();
  const double ul = ql.mx() / rl;
  const double ur = qr.mx() / rr;
  const double vl = ql.my() / rl;
  const double vr = qr.my() / rr;
  const double pl = pressure(ql, gamma);
  const double pr = pressure(qr, gamma);
  const double hl = (ql.energy() + pl) / rl;
  const double hr = (qr.energy() + pr) / rr;

  const double sl = std::sqrt(rl);
  const double sr = std::sqrt(rr);
  const double inv = 1.0 / (sl + sr);
  const double u = (sl * ul + sr * ur) * inv;
  const double v = (sl * vl + sr * vr) * inv;
  const double h = (sl * hl + sr * hr) * inv;
  const double ke = 0.5 * (u * u + v * v);
  const double c2 = (gamma - 1.0) * (h - ke);
  if (!(c2 > 0.0)) {
    throw UnphysicalState("Roe average has non-positive sound speed squared", ql,
                          "left state of Roe problem (right state " + to_string(qr) + ")");
  }
  const double c = std::sqrt(c2);
  const double rho = sl * sr;

  const double drho = rr - rl;
  const double du = ur - ul;
  const double dv = vr - vl;
  const double dp = pr - pl;

  const double a1 = (dp - rho * c * du) / (2.0 * c2);
  const double a2 = drho - dp / c2;
  const double a3 = rho * dv;
  const double a4 = (dp + rho * c * du) / (2.0 * c2);

  const double lam[4] = {u - c, u, u, u + c};
  double mag[4] = {std::abs(lam[0]), std::abs(lam[1]), std::abs(lam[2]), std::abs(lam[3])};

  // Harten-Hyman fix on the acoustic fields.
  const double cl = std::sqrt(gamma * pl / rl);
  const double cr = std::sqrt(gamma * pr / rr);
  const double lam_l[2] = {ul - cl, ul + cl};
  const double lam_r[2] = {ur - cr, ur + cr};
  const int acoustic[2] = {0, 3};
  for (int a = 0; a < 2; ++a) {
    const int k = acoustic[a];
    const double delta = std::max({0.0, lam[k] - lam_l[a], lam_r[a] - lam[k]});
    if (mag[k] < 2.0 * delta) mag[k] = lam[k] * lam[k] / (4.0 * delta) + delta;
  }

  const ConservedState fl = x_flux(ql, gamma);
  const ConservedState fr = x_flux(qr, gamma);
  bool all_right = true;
  bool all_left = true;
  for (int k = 0; k < 4; ++k) {
    all_right = all_right && lam[k] >= 0.0 && mag[k] == lam[k];
    all_left = all_left && lam[k] <= 0.0 && mag[k] == -lam[k];
  }
  if (all_right) return fl;
  if (all_left) return fr;

  const double w1 = mag[0] * a1;
  const double w2 = mag[1] * a2;
  const double w3 = mag[2] * a3;
  const double w4 = mag[3] * a4;
  ConservedState diss;
  diss[0] = w1 + w2 + w4;
  diss[1] = w1 * (u - c) + w2 * u + w4 * (u + c);
  diss[2] = (w1 + w2 + w4) * v + w3;
  diss[3] = w1 * (h - u * c) + w2 * ke + w3 * v + w4 * (h + u * c);
  ConservedState f;
  for (int k = 0; k < kNumVars; ++k) f[k] = 0.5 * (fl[k] + fr[k] - diss[k]);
  return f;
}

}  // namespace

PrimitiveState cons_to_prim(const ConservedState& q, double gamma) {
  if (!(q.rho() > 0.0)) throw UnphysicalState("non-positive density", q);
  const double u = q.mx() / q.rho();
  const double v = q.my() / q.rho();
  const double p = (gamma - 1.0) * (q.energy() - 0.5 * q.rho() * (u * u + v * v));
  if (!(p > 0.0)) throw UnphysicalState("non-positive pressure", q);
  return PrimitiveState{q.rho(), u, v, p};
}

ConservedState prim_to_cons(const PrimitiveState& w, double gamma) {
  ConservedState q{{w.rho, w.rho * w.u, w.rho * w.v,
                    w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)}};
  if (!(w.rho > 0.0)) throw UnphysicalState("non-positive density", q);
  if (!(w.p > 0.0)) throw UnphysicalState("non-positive pressure", q);
  return q;
}

ConservedState physical_flux(const ConservedState& q, Axis axis, double gamma) {
  require_physical(q, gamma, "physical_flux");
  if (axis == Axis::X) return x_flux(q, gamma);
  return swap_xy(x_flux(swap_xy(q), gamma));
}

double max_signal_speed(const CellField& field, Axis axis, double gamma) {
  const GridSpec& s = field.spec();
  const int mom = axis == Axis::X ? 1 : 2;
  std::vector<double> row_max(static_cast<std::size_t>(s.ny()), 0.0);
  std::vector<int> bad_row(static_cast<std::size_t>(s.ny()), -1);
  parallel_for(0, s.ny(), [&](int j) {
    const double* rho = field.row(0, j);
    const double* m = field.row(mom, j);
    const double* mx = field.row(1, j);
    const double* my = field.row(2, j);
    const double* e = field.row(3, j);
    double best = 0.0;
    bool ok = true;
    for (int i = 0; i < s.nx(); ++i) {
      const double inv = 1.0 / rho[i];
      const double p = (gamma - 1.0) * (e[i] - 0.5 * (mx[i] * mx[i] + my[i] * my[i]) * inv);
      ok = ok && rho[i] > 0.0 && p > 0.0;
      const double speed = std::abs(m[i] * inv) + std::sqrt(gamma * p * inv);
      best = std::max(best, speed);
    }
    row_max[j] = best;
    if (!ok) {
      for (int i = 0; i < s.nx(); ++i) {
        const double p = pressure(field.state(i, j), gamma);
        if (!(rho[i] > 0.0 && p > 0.0)) {
          bad_row[j] = i;
          break;
        }
      }
    }
  });
  for (int j = 0; j < s.ny(); ++j) {
    if (bad_row[j] >= 0) {
      const int i = bad_row[j];
      throw UnphysicalState("unphysical cell average", field.state(i, j),
                            "cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
  return *std::max_element(row_max.begin(), row_max.end());
}

ConservedState lax_friedrichs(const ConservedState& ql, const ConservedState& qr, Axis axis,
                              double alpha, double gamma) {
  const ConservedState fl = physical_flux(ql, axis, gamma);
  const ConservedState fr = physical_flux(qr, axis, gamma);
  ConservedState f;
  for (int k = 0; k < kNumVars; ++k) f[k] = 0.5 * (fl[k] + fr[k] - alpha * (qr[k] - ql[k]));
  return f;
}

ConservedState roe_flux(const ConservedState& ql, const ConservedState& qr, Axis axis,
                        double gamma) {
  require_physical(ql, gamma, "roe_flux left state");
  require_physical(qr, gamma, "roe_flux right state");
  if (axis == Axis::X) return roe_x(ql, qr, gamma);
  return swap_xy(roe_x(swap_xy(ql), swap_xy(qr), gamma));
}

}  // namespace cartweno
