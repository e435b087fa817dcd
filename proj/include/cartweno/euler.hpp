#pragma once

#include "cartweno/grid.hpp"
#include "cartweno/state.hpp"

namespace cartweno {

inline constexpr double kDefaultGamma = 1.4;

/// Ideal-gas conversions. Throw UnphysicalState for rho <= 0 or p <= 0.
PrimitiveState cons_to_prim(const ConservedState& q, double gamma);
ConservedState prim_to_cons(const PrimitiveState& w, double gamma);

[[nodiscard]] inline double pressure(const ConservedState& q, double gamma) noexcept {
  const double ke = 0.5 * (q.mx() * q.mx() + q.my() * q.my()) / q.rho();
  return (gamma - 1.0) * (q.energy() - ke);
}

/// Euler flux f (axis X) or g (axis Y).
ConservedState physical_flux(const ConservedState& q, Axis axis, double gamma);

/// max over interior cells of |u| + c (axis X) or |v| + c (axis Y).
double max_signal_speed(const CellField& field, Axis axis, double gamma);

/// 1/2 [f(qL) + f(qR) - alpha (qR - qL)].
ConservedState lax_friedrichs(const ConservedState& ql, const ConservedState& qr, Axis axis,
                              double alpha, double gamma);

/// Roe flux with the Harten-Hyman entropy fix on the acoustic fields.
ConservedState roe_flux(const ConservedState& ql, const ConservedState& qr, Axis axis,
                        double gamma);

}  // namespace cartweno
