#pragma once

#include <cmath>
#include <compare>

namespace germflow {

/// A point x in (0, 1) stored as z = ln x.
///
/// Points near the origin are far below the smallest double (x = e^{-e^{40}}
/// is routine), so all field evaluations go through z, L = |ln x| = -z and
/// w = ln L. w is negative when x > 1/e; families that need ln w check w > 0
/// themselves.
class LogCoord {
 public:
  constexpr LogCoord() = default;

  static LogCoord from_z(double z);
  static LogCoord from_x(double x);
  static LogCoord from_w(double w);

  [[nodiscard]] double z() const noexcept { return z_; }
  [[nodiscard]] double x() const noexcept { return std::exp(z_); }
  [[nodiscard]] double L() const noexcept { return -z_; }
  [[nodiscard]] double inv_L() const noexcept { return -1.0 / z_; }
  [[nodiscard]] double w() const noexcept { return std::log(-z_); }

  // Ordered like x.
  friend constexpr auto operator<=>(const LogCoord&, const LogCoord&) = default;

 private:
  constexpr explicit LogCoord(double z) : z_(z) {}

  double z_ = -1.0;
};

}  // namespace germflow
