#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "germflow/fields.hpp"
#include "germflow/kernels.hpp"
#include "germflow/quadrature.hpp"
#include "germflow/timemap.hpp"

namespace germflow {

enum class TailLabel { Convergent, BoundedOscillating, Divergent, Inconclusive };
enum class Gauge { W, LogW, None };

[[nodiscard]] std::string_view label_name(TailLabel l) noexcept;
[[nodiscard]] std::string_view gauge_name(Gauge g) noexcept;

struct GrowthFit {
  Gauge gauge = Gauge::None;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct TailBehavior {
  TailLabel label = TailLabel::Inconclusive;
  /// Last sample; the limit estimate when CONVERGENT.
  double limit = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Best of the gauge fits over the last half, reported for every label.
  GrowthFit fit;
};

struct TailParams {
  double conv_tol = 1e-3;
  double slope_min = 1e-2;
  double bound_cap = 1e3;
  double r2_min = 0.99;
};

/// CONVERGENT if the last quarter varies by less than conv_tol; else
/// DIVERGENT if an affine fit against w or ln w over the last half has
/// r2 >= r2_min and |slope| >= slope_min; else BOUNDED_OSCILLATING if the
/// whole range is below bound_cap; else INCONCLUSIVE. Needs 16 samples.
[[nodiscard]] TailBehavior tail_behavior(const TailSamples& samples, const TailParams& p = {});

enum class Tri { Yes, No, Inconclusive };
[[nodiscard]] std::string_view tri_name(Tri t) noexcept;

struct ClassifyParams {
  TailParams tail;
  /// Grid [w(delta), w(delta) + w_span] unless w_max is given.
  double w_span = 40.0;
  std::optional<double> w_max;
  std::size_t samples = 64;
  QuadOptions quad;
  /// Multipliers closer than this count as equal.
  double multiplier_tol = 1e-3;
  ExecPolicy policy = ExecPolicy::Parallel;
};

struct RegularityVerdict {
  TailBehavior log_ratio;
  TailBehavior time_integral;
  Tri bilipschitz = Tri::Inconclusive;
  Tri c1 = Tri::Inconclusive;
  double multiplier_x = 0.0;
  double multiplier_y = 0.0;
  /// Common domain cap used for both samplers.
  LogCoord delta;
};

/// Samples ln(X/Y) pointwise and the integral of (1/X - 1/Y) from eps to
/// delta on a w-grid, and combines the two tail behaviours:
/// c1 = yes iff both converge; bilipschitz = yes iff both stay bounded,
/// = no iff either diverges. Fields with different multipliers are not
/// bi-Lipschitz conjugate. NotHyperbolic if a multiplier cannot be estimated.
[[nodiscard]] RegularityVerdict classify_pair(const FieldSpec& X, const FieldSpec& Y,
                                              const ClassifyParams& params = {});

struct AcCondition {
  bool holds = false;
  TailBehavior tail;
};

struct AcConditionsReport {
  double alpha = 0.0;
  LogCoord delta;
  /// Certified lower bound of 1 + u on (0, delta].
  double min_one_plus_u = 0.0;
  /// alpha = 0: s vanishes and condition (iv) cannot hold.
  bool degenerate = false;
  AcCondition cond[7];
  [[nodiscard]] bool all_hold() const noexcept;
};

struct AcParams {
  TailParams tail;
  /// Pointwise conditions: geometric w-grid up to this.
  double w_point_max = 1e6;
  std::size_t point_samples = 64;
  /// Integrability conditions: linear grid [w(delta), w(delta) + w_span].
  double w_span = 40.0;
  std::size_t samples = 64;
  /// Divergence of the integral of |Ds|: geometric grid up to this.
  double w_var_max = 1e5;
  std::size_t var_samples = 48;
  QuadOptions quad;
  ExecPolicy policy = ExecPolicy::Parallel;
};

/// Seven conditions for s to generate a C^{1+ac} flow conjugate to the
/// linear one by exp(-s(x)) x:
///   (i) s -> 0; (ii) u -> 0 and 1 + u >= c > 0; (iii) Du in L1;
///   (iv) Ds not in L1; (v) x Du -> 0; (vi) x (Du)^2 in L1; (vii) D(x Du) in L1.
[[nodiscard]] AcConditionsReport check_ac_conditions(const SGenSpec& sgen,
                                                     const AcParams& params = {});

/// The integral of |Du| (iii), x (Du)^2 (vi) or |D(x Du)| (vii) from eps up
/// to delta as a tail sequence on w_grid.
enum class AcIntegral { AbsDu, XDuSquared, AbsDXDu };
[[nodiscard]] TailSamples ac_integral(const SGenSpec& sgen, AcIntegral which,
                                      std::span<const double> w_grid, const QuadOptions& q = {},
                                      ExecPolicy policy = ExecPolicy::Parallel);

struct FlowAcBound {
  double lhs;
  double rhs;
  bool holds;
};

/// lhs = integral over [eps, a] of |D log Df^t| = |DX o f^t - DX| / |X|;
/// rhs = 2 |t| TV(DX; [eps, a']), a' = a for t > 0 and the image of a under
/// the flow for t < 0. holds iff lhs <= rhs (1 + 1e-3).
[[nodiscard]] FlowAcBound flow_ac_bound_check(const FieldSpec& X, double t, LogCoord a,
                                              LogCoord eps, const QuadOptions& q = {});
/// Same, reusing a prebuilt time map of X.
[[nodiscard]] FlowAcBound flow_ac_bound_check(const TimeMapCache& cache, double t, LogCoord a,
                                              LogCoord eps, const QuadOptions& q = {});

}  // namespace germflow
