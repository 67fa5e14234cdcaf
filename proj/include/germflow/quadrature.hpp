#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "germflow/kernels.hpp"
#include "germflow/log_coord.hpp"

namespace germflow {

/// Which measure the evaluator is a density against: dx or dz = dx/x.
enum class Density { X, Z };

struct Integrand {
  std::function<double(LogCoord)> eval;
  Density density = Density::Z;
};

struct QuadOptions {
  /// Local acceptance: panel error <= tol * panel width, width measured in
  /// the integration variable (w below x = 1/e, z above).
  double tol = 1e-9;
  std::size_t max_evals = 10'000'000;
  /// Initial panels are no wider than this.
  double max_panel = 0.1;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7-15) on a plain interval [a, b], a <= b.
[[nodiscard]] QuadResult integrate_1d(const std::function<double(double)>& g, double a, double b,
                                      const QuadOptions& opts = {});

/// Integral of f from a to b, with a <= b in x. The part below x = 1/e is
/// integrated in w = ln|ln x| (density f * L), the part above in z.
[[nodiscard]] QuadResult integrate(const Integrand& f, LogCoord a, LogCoord b,
                                   const QuadOptions& opts = {});

/// Independent integrals over panels (lower, upper); used by the tail
/// samplers so panels can run concurrently. Results are in input order.
[[nodiscard]] std::vector<QuadResult> integrate_panels(
    const Integrand& f, std::span<const std::pair<LogCoord, LogCoord>> panels,
    const QuadOptions& opts = {}, ExecPolicy policy = ExecPolicy::Parallel);

/// I(eps_j) = integral from eps_j up to delta, sampled with w_j = ln|ln eps_j|.
struct TailSamples {
  std::vector<double> w_grid;
  std::vector<double> values;
  std::size_t evaluations = 0;
};

/// n points equi-spaced in w on [w(delta), w_max]; values[0] = 0.
[[nodiscard]] TailSamples tail_sequence(const Integrand& f, LogCoord delta, double w_max,
                                        std::size_t n, const QuadOptions& opts = {},
                                        ExecPolicy policy = ExecPolicy::Parallel);

/// Same on an arbitrary strictly increasing grid with w_grid[0] >= w(delta).
[[nodiscard]] TailSamples tail_sequence(const Integrand& f, LogCoord delta,
                                        std::span<const double> w_grid,
                                        const QuadOptions& opts = {},
                                        ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace germflow
