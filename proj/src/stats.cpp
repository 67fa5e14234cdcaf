#include "germflow/stats.hpp"

#include "germflow/errors.hpp"

namespace germflow {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw InsufficientSamples("least_squares: x and y differ in length");
  if (n < 2) throw InsufficientSamples("least_squares needs at least 2 points");

  // Two-pass centred sums.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InsufficientSamples("least_squares: abscissae are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (slope * x[i] + intercept);
    ss_res += e * e;
  }
  const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return LinearFit{slope, intercept, r2};
}

}  // namespace germflow
