#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "germflow/kernels.hpp"
#include "germflow/stats.hpp"

namespace germflow {

struct TVResult {
  double value;
  /// Growth of the estimate at the last doubling.
  double last_increment;
  std::size_t evaluations;
};

/// Grid estimate of the total variation of f on [a, b]: sums |f(x_{i+1}) - f(x_i)|
/// over uniform partitions, starting at 16 intervals and doubling until the
/// estimate grows by less than refine_tol twice in a row (and at least 1024
/// intervals are used). A lower bound of the true value.
[[nodiscard]] TVResult total_variation(const std::function<double(double)>& f, double a, double b,
                                       double refine_tol = 1e-10,
                                       std::size_t max_evals = (std::size_t{1} << 22) + 1);

struct TanFixedPoints {
  /// a_k in (k pi, k pi + pi/2), k = 1..K.
  std::vector<double> a;
  /// |cot(a_k) - 1/a_k|.
  std::vector<double> residual;
};

/// First K positive solutions of tan(a) = a.
[[nodiscard]] TanFixedPoints tan_fixed_points(std::size_t K);

/// shat(y) = -y sin(1/y).
[[nodiscard]] double shat(double y) noexcept;

/// Default lower end w(delta) = ln 4 of the s-generated domain.
[[nodiscard]] double default_w_delta();

/// Total variation of s(w) = -sin(w)/w on [w_delta, A], from its extrema
/// (the a_k in between). In x this is the integral of |Ds| from
/// eps = exp(-e^A) up to delta.
[[nodiscard]] double shat_variation(double A, double w_delta = default_w_delta());

struct VariationCurve {
  /// Upper ends A_j = ln|ln eps_j|, increasing.
  std::vector<double> thresholds;
  std::vector<double> values;
};

[[nodiscard]] VariationCurve shat_variation_curve(std::span<const double> A_grid,
                                                  double w_delta = default_w_delta());

/// Variation of log DH over [eps_j, delta] for the conjugacy H between the
/// s-generated fields with parameters alpha and beta, at A_j = ln|ln eps_j|.
/// log DH is written as a function phi of w alone; the curve is the sum of
/// |jumps of phi| between its critical points.
[[nodiscard]] VariationCurve conjugacy_variation_curve(double alpha, double beta,
                                                       std::span<const double> A_grid,
                                                       ExecPolicy policy = ExecPolicy::Parallel);

/// phi(w) and phi'(w) for the curve above; exposed for cross-checks.
struct ConjugacyLogDerivative {
  double alpha;
  double beta;
  /// w-coordinate of H(x).
  [[nodiscard]] double w_image(double w) const;
  [[nodiscard]] double phi(double w) const;
  [[nodiscard]] double dphi(double w) const;
};

/// Lower end of the common s-generated domain for (alpha, beta).
[[nodiscard]] double conjugacy_w_delta(double alpha, double beta);

/// Least-squares fit of the curve values against gauge(threshold) over the
/// last tail_fraction of points. Needs at least 8 points.
[[nodiscard]] LinearFit asymptote_fit(const VariationCurve& curve,
                                      const std::function<double(double)>& gauge,
                                      double tail_fraction = 0.5);

/// n points from lo to hi with constant ratio.
[[nodiscard]] std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

}  // namespace germflow
