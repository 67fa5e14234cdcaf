#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "germflow/log_coord.hpp"

namespace germflow {

/// Closed-form vector-field families near a hyperbolic contracting singularity.
///
/// With L = |ln x|, w = ln L, v = ln w and multiplier lambda < 0:
///
///   Linear        X = lambda x
///   Xalpha        X = lambda x / (1 + alpha / ln x)
///   Yalpha        X = lambda x (1 - alpha / ln x)
///   XbarAlpha     X = lambda x / (1 + alpha / (ln x * w))
///   XbarbarAlpha  X = lambda x / (1 + alpha / (ln x * w * v))
///   XtildeAlpha   X = lambda x / (1 + alpha cos(w) / ln x)
///   SGenerated    X = -x / (1 + u),  u = -x Ds,  s = -alpha sin(w) / w
///   PerturbA      X_a = X / (1 + alpha X / (x ln x))            over a base X
///   PerturbB      X_a = X / (1 + alpha X cos(w) / (x ln x))     over a base X
enum class Family {
  Linear,
  Xalpha,
  Yalpha,
  XbarAlpha,
  XbarbarAlpha,
  XtildeAlpha,
  SGenerated,
  PerturbA,
  PerturbB,
};

[[nodiscard]] std::string_view family_name(Family f) noexcept;
[[nodiscard]] std::optional<Family> family_from_name(std::string_view name) noexcept;
[[nodiscard]] const std::vector<Family>& all_families() noexcept;

/// s(w) = -sin(w)/w and its first three derivatives in w.
struct SProfile {
  double s;
  double s_w;
  double s_ww;
  double s_www;
};
[[nodiscard]] SProfile s_profile(double w) noexcept;

/// Profile s_alpha = alpha * s for the s-generated family.
///
/// All closed forms are written in (w, 1/L) so that they stay finite far
/// below the double range of x; the LogCoord overloads below are thin
/// wrappers.
class SGenSpec {
 public:
  explicit SGenSpec(double alpha, std::optional<double> delta = std::nullopt);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double delta() const noexcept { return std::exp(delta_z_); }
  [[nodiscard]] LogCoord delta_coord() const { return LogCoord::from_z(delta_z_); }
  /// Certified lower bound c of 1 + u on (0, delta].
  [[nodiscard]] double min_one_plus_u() const noexcept { return min_one_plus_u_; }

  [[nodiscard]] double s_at(double w) const noexcept;
  [[nodiscard]] double u_at(double w, double inv_L) const noexcept;
  /// x * Du.
  [[nodiscard]] double x_du_at(double w, double inv_L) const noexcept;
  /// x * D(x Du).
  [[nodiscard]] double x_d_xdu_at(double w, double inv_L) const noexcept;
  /// du/dL, used by the field derivative.
  [[nodiscard]] double du_dL_at(double w, double inv_L) const noexcept;

  void check_point(LogCoord p) const;

 private:
  double alpha_;
  double delta_z_;
  double min_one_plus_u_;
};

[[nodiscard]] double eval_s(const SGenSpec& sg, LogCoord p);
[[nodiscard]] double eval_Ds(const SGenSpec& sg, LogCoord p);
[[nodiscard]] double eval_u(const SGenSpec& sg, LogCoord p);
[[nodiscard]] double eval_Du(const SGenSpec& sg, LogCoord p);

/// Immutable description of a field: family, parameters and domain cap.
class FieldSpec {
 public:
  static FieldSpec linear(double lambda = -1.0, std::optional<double> delta = std::nullopt);
  /// Any non-perturbation family. SGenerated ignores lambda (it is -1).
  static FieldSpec make(Family family, double alpha, double lambda = -1.0,
                        std::optional<double> delta = std::nullopt);
  static FieldSpec perturb_a(const FieldSpec& base, double alpha,
                             std::optional<double> delta = std::nullopt);
  static FieldSpec perturb_b(const FieldSpec& base, double alpha,
                             std::optional<double> delta = std::nullopt);

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  /// Nominal multiplier DX(0); for perturbations the base's multiplier.
  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] double delta() const noexcept { return std::exp(delta_z_); }
  [[nodiscard]] LogCoord delta_coord() const { return LogCoord::from_z(delta_z_); }
  [[nodiscard]] const FieldSpec* base() const noexcept { return base_.get(); }
  [[nodiscard]] const SGenSpec* sgen() const noexcept { return sgen_ ? &*sgen_ : nullptr; }

  [[nodiscard]] bool contains(LogCoord p) const noexcept;
  /// Canonical spec string, parseable by parse_field_spec.
  [[nodiscard]] std::string to_string() const;

 private:
  friend FieldSpec field_from_s(const SGenSpec& sgen);

  FieldSpec() = default;
  void settle_domain(std::optional<double> delta, double default_L);

  Family family_ = Family::Linear;
  double alpha_ = 0.0;
  double lambda_ = -1.0;
  double delta_z_ = -3.0;
  std::shared_ptr<const FieldSpec> base_;
  std::optional<SGenSpec> sgen_;
};

/// Values of a field at one point, all scale-free.
struct FieldJet {
  double ratio;        ///< X(x) / x
  double deviation;    ///< x / X(x) - 1/lambda
  double dx;           ///< DX(x)
  double denominator;  ///< the family's 1 + g(x), > 0 on the domain
};

/// Throws DomainError outside (0, delta] and DegeneracyError when a
/// denominator is non-positive.
[[nodiscard]] FieldJet evaluate(const FieldSpec& spec, LogCoord p);

/// X(x); underflows to 0 for x below the double range (use eval_ratio there).
[[nodiscard]] double eval_X(const FieldSpec& spec, LogCoord p);
[[nodiscard]] double eval_ratio(const FieldSpec& spec, LogCoord p);
[[nodiscard]] double eval_DX(const FieldSpec& spec, LogCoord p);
/// x/X - 1/lambda: the z-density of the time map with its linear part removed.
[[nodiscard]] double eval_deviation(const FieldSpec& spec, LogCoord p);

/// The s-generated field X = -x / (1 + u).
[[nodiscard]] FieldSpec field_from_s(const SGenSpec& sgen);

struct MultiplierEstimate {
  double value;
  double error;
};

/// lim X(x)/x, sampled on w = max(w(delta), 2) + k. Throws NonConvergence if
/// the tail of the sequence is not Cauchy within cauchy_tol.
[[nodiscard]] MultiplierEstimate multiplier_estimate(const FieldSpec& spec,
                                                     double cauchy_tol = 1e-6);

/// n points equi-spaced in w on [w(delta), w(delta) + span].
[[nodiscard]] std::vector<LogCoord> audit_grid(const FieldSpec& spec, std::size_t n = 512,
                                               double span = 10.0);

}  // namespace germflow
