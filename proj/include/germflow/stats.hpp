#pragma once

#include <span>

namespace germflow {

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};

/// Ordinary least squares y ~ slope * x + intercept. r2 is 1 when y is
/// constant and the fit is exact. Throws InsufficientSamples below 2 points.
[[nodiscard]] LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace germflow
