#pragma once

#include <memory>
#include <optional>

#include "germflow/fields.hpp"
#include "germflow/log_coord.hpp"
#include "germflow/quadrature.hpp"
#include "germflow/timemap.hpp"

namespace germflow {

/// Conjugacy h from the flow of X to the flow of Y: h o f_X^t = f_Y^t o h.
///
/// Every such h is tau_Y^{-1}(tau_X(x) + t) for a constant t. The anchored
/// form picks the one with h(a) = a; there h(x) = g^{s(x)}(x) with g the flow
/// of Y and s(x) the integral from a to x of (1/X - 1/Y).
class ConjugacyMap {
 public:
  /// Anchor defaults to the smaller of the two domain caps.
  static ConjugacyMap anchored(const FieldSpec& X, const FieldSpec& Y,
                               std::optional<LogCoord> anchor = std::nullopt,
                               const TimeMapOptions& tm = {});
  static ConjugacyMap shifted(const FieldSpec& X, const FieldSpec& Y, double t,
                              const TimeMapOptions& tm = {});

  [[nodiscard]] const TimeMapCache& source() const noexcept { return *source_; }
  [[nodiscard]] const TimeMapCache& target() const noexcept { return *target_; }
  [[nodiscard]] std::optional<LogCoord> anchor() const noexcept { return anchor_; }
  /// Largest point of the common domain.
  [[nodiscard]] LogCoord domain_cap() const noexcept { return cap_; }

  /// s(x): time by which the target flow moves x onto h(x).
  [[nodiscard]] double time_shift(LogCoord p) const;
  [[nodiscard]] LogCoord apply(LogCoord p) const;
  /// Dh(x) = Y(h(x)) / X(x).
  [[nodiscard]] double derivative(LogCoord p) const;
  /// ln Dh(x), accurate where |ln x| is large.
  [[nodiscard]] double log_derivative(LogCoord p) const;

  QuadOptions quad{1e-12, 10'000'000, 0.1};

 private:
  ConjugacyMap(const FieldSpec& X, const FieldSpec& Y, const TimeMapOptions& tm);
  void check(LogCoord p) const;
  struct Image {
    LogCoord point;
    double dz;
  };
  Image image(LogCoord p) const;

  std::shared_ptr<const TimeMapCache> source_;
  std::shared_ptr<const TimeMapCache> target_;
  LogCoord cap_;
  std::optional<LogCoord> anchor_;
  double shift_ = 0.0;
};

[[nodiscard]] double time_shift(const ConjugacyMap& map, LogCoord p);
[[nodiscard]] LogCoord apply(const ConjugacyMap& map, LogCoord p);
[[nodiscard]] double derivative(const ConjugacyMap& map, LogCoord p);

enum class ClosedFormKind { Halpha, Htilde, HsGen };

/// Closed-form conjugacies to the linear flow x -> e^{-t} x:
///   Halpha  x |ln x|^alpha            (from Xalpha)
///   Htilde  x exp(alpha sin(w))       (from XtildeAlpha)
///   HsGen   x exp(-alpha s(w))        (from SGenerated), s(w) = -sin(w)/w
[[nodiscard]] LogCoord closed_form(ClosedFormKind kind, double alpha, LogCoord p);

}  // namespace germflow
