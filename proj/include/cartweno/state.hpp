#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace cartweno {

inline constexpr int kNumVars = 4;

enum class Axis { X = 0, Y = 1 };

/// Conserved variables (rho, rho*u, rho*v, E) of the 2D Euler equations.
struct ConservedState {
  std::array<double, kNumVars> v{};

  [[nodiscard]] double rho() const noexcept { return v[0]; }
  [[nodiscard]] double mx() const noexcept { return v[1]; }
  [[nodiscard]] double my() const noexcept { return v[2]; }
  [[nodiscard]] double energy() const noexcept { return v[3]; }

  double& operator[](int k) noexcept { return v[k]; }
  double operator[](int k) const noexcept { return v[k]; }

  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

struct PrimitiveState {
  double rho{};
  double u{};
  double v{};
  double p{};
};

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised when a state has non-positive density or pressure. Carries the
/// offending state and, when known, where it was found.
class UnphysicalState : public Error {
 public:
  UnphysicalState(const std::string& what, ConservedState state, std::string where = {})
      : Error(where.empty() ? what : what + " at " + where),
        state_(state),
        where_(std::move(where)) {}

  [[nodiscard]] const ConservedState& state() const noexcept { return state_; }
  [[nodiscard]] const std::string& where() const noexcept { return where_; }

 private:
  ConservedState state_;
  std::string where_;
};

std::string to_string(const ConservedState& q);

}  // namespace cartweno
