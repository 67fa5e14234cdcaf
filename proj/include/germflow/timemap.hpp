#pragma once

#include <cstddef>
#include <vector>

#include "germflow/fields.hpp"
#include "germflow/log_coord.hpp"

namespace germflow {

struct TimeMapOptions {
  /// Largest w = ln|ln x| the table covers.
  double w_cap = 50.0;
  /// Hermite midpoint error accepted per segment, relative to 1 + |sigma|.
  double table_tol = 1e-10;
  /// Quadrature tolerance for the tabulated nodes.
  double quad_tol = 1e-13;
  double max_segment = 0.25;
};

/// tau(x) = integral from b to x of dy / X(y), with base b = delta, so that
/// tau(b) = 0 and tau grows toward the origin.
///
/// In z, tau = (z - z_b)/lambda + sigma(w) where sigma collects the deviation
/// x/X - 1/lambda. sigma is tabulated in w on [w_b, w_cap] by cubic Hermite
/// segments whose endpoint slopes d sigma/dw = -L (x/X - 1/lambda) are exact.
/// The table is built in the constructor and never changes afterwards, so a
/// cache can be shared between threads.
class TimeMapCache {
 public:
  explicit TimeMapCache(FieldSpec spec, const TimeMapOptions& opts = {});

  [[nodiscard]] const FieldSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] LogCoord base() const noexcept { return base_; }
  [[nodiscard]] double w_cap() const noexcept { return w_.back(); }
  [[nodiscard]] std::size_t segments() const noexcept { return w_.size() - 1; }
  /// Largest per-segment midpoint discrepancy seen while building.
  [[nodiscard]] double max_segment_error() const noexcept { return max_err_; }

  [[nodiscard]] double tau(LogCoord p) const;
  /// d tau / dz of the interpolant.
  [[nodiscard]] double dtau_dz(LogCoord p) const;
  /// Point with tau = t; RangeExceeded if t < 0 or beyond the w cap.
  [[nodiscard]] LogCoord tau_inv(double t) const;

  [[nodiscard]] double sigma(double w) const;
  [[nodiscard]] double sigma_slope(double w) const;

 private:
  std::size_t segment_of(double w) const;
  double slope_exact(double w) const;

  FieldSpec spec_;
  LogCoord base_;
  double lambda_;
  std::vector<double> w_, s_, d_;
  double max_err_ = 0.0;
};

[[nodiscard]] double tau(const TimeMapCache& cache, LogCoord p);
[[nodiscard]] LogCoord tau_inv(const TimeMapCache& cache, double t);
/// f^t(x) = tau^{-1}(tau(x) + t); f^0 is the identity.
[[nodiscard]] LogCoord flow(const TimeMapCache& cache, double t, LogCoord p);
/// Df^t(x) = X(f^t x) / X(x).
[[nodiscard]] double flow_derivative(const TimeMapCache& cache, double t, LogCoord p);

}  // namespace germflow
