#include "germflow/conjugacy.hpp"

#include <cmath>

#include "germflow/errors.hpp"

namespace germflow {

ConjugacyMap::ConjugacyMap(const FieldSpec& X, const FieldSpec& Y, const TimeMapOptions& tm)
    : source_(std::make_shared<const TimeMapCache>(X, tm)),
      target_(std::make_shared<const TimeMapCache>(Y, tm)),
      cap_(std::min(X.delta_coord(), Y.delta_coord())) {}

ConjugacyMap ConjugacyMap::anchored(const FieldSpec& X, const FieldSpec& Y,
                                    std::optional<LogCoord> anchor, const TimeMapOptions& tm) {
  ConjugacyMap map(X, Y, tm);
  const LogCoord a = anchor.value_or(map.cap_);
  map.check(a);
  map.anchor_ = a;
  map.shift_ = map.target_->tau(a) - map.source_->tau(a);
  return map;
}

ConjugacyMap ConjugacyMap::shifted(const FieldSpec& X, const FieldSpec& Y, double t,
                                   const TimeMapOptions& tm) {
  if (!std::isfinite(t)) throw DomainError("conjugacy shift must be finite");
  ConjugacyMap map(X, Y, tm);
  map.shift_ = t;
  return map;
}

void ConjugacyMap::check(LogCoord p) const {
  if (p.z() > cap_.z() + 1e-14 * std::abs(cap_.z())) {
    throw DomainError("point lies outside the common domain of the two fields");
  }
}

double ConjugacyMap::time_shift(LogCoord p) const {
  check(p);
  if (!anchor_) {
    // tau_X + t - tau_Y with the linear parts combined before summing.
    const double lx = source_->spec().lambda(), ly = target_->spec().lambda();
    const double linear = lx == ly ? (target_->base().z() - source_->base().z()) / lx
                                   : (p.z() - source_->base().z()) / lx -
                                         (p.z() - target_->base().z()) / ly;
    return linear + source_->sigma(p.w()) - target_->sigma(p.w()) + shift_;
  }

  const FieldSpec& X = source_->spec();
  const FieldSpec& Y = target_->spec();
  // x/X - x/Y is the dz-density of 1/X - 1/Y; its constant part
  // 1/lambda_X - 1/lambda_Y is integrated exactly.
  const double c = 1.0 / X.lambda() - 1.0 / Y.lambda();
  const Integrand f{[&](LogCoord q) {
                      return evaluate(X, q).deviation - evaluate(Y, q).deviation;
                    },
                    Density::Z};
  const LogCoord a = *anchor_;
  if (p == a) return 0.0;
  const double linear = c == 0.0 ? 0.0 : c * (p.z() - a.z());
  if (p < a) return linear - integrate(f, p, a, quad).value;
  return linear + integrate(f, a, p, quad).value;
}

ConjugacyMap::Image ConjugacyMap::image(LogCoord p) const {
  const double s = time_shift(p);
  const LogCoord h = target_->tau_inv(target_->tau(p) + s);
  // z_h - z from tau_Y(h) - tau_Y(x) = s; free of the cancellation in z_h - z.
  const double dz = target_->spec().lambda() * (s - target_->sigma(h.w()) + target_->sigma(p.w()));
  return {LogCoord::from_z(p.z() + dz), dz};
}

LogCoord ConjugacyMap::apply(LogCoord p) const { return image(p).point; }

double ConjugacyMap::log_derivative(LogCoord p) const {
  const Image im = image(p);
  return im.dz + std::log(eval_ratio(target_->spec(), im.point) / eval_ratio(source_->spec(), p));
}

double ConjugacyMap::derivative(LogCoord p) const { return std::exp(log_derivative(p)); }

double time_shift(const ConjugacyMap& map, LogCoord p) { return map.time_shift(p); }
LogCoord apply(const ConjugacyMap& map, LogCoord p) { return map.apply(p); }
double derivative(const ConjugacyMap& map, LogCoord p) { return map.derivative(p); }

LogCoord closed_form(ClosedFormKind kind, double alpha, LogCoord p) {
  const double w = p.w();
  switch (kind) {
    case ClosedFormKind::Halpha:
      return LogCoord::from_z(p.z() + alpha * w);
    case ClosedFormKind::Htilde:
      return LogCoord::from_z(p.z() + alpha * std::sin(w));
    case ClosedFormKind::HsGen:
      if (!(w > 0.0)) throw DomainError("HsGen needs ln|ln x| > 0");
      return LogCoord::from_z(p.z() - alpha * s_profile(w).s);
  }
  throw DomainError("unknown closed-form kind");
}

}  // namespace germflow
