#include "germflow/timemap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "germflow/errors.hpp"
#include "germflow/quadrature.hpp"
#include "germflow/roots.hpp"

namespace germflow {

namespace {

struct Hermite {
  double value;
  double slope;
};

Hermite hermite(double w0, double s0, double d0, double w1, double s1, double d1, double w) {
  const double h = w1 - w0;
  const double t = (w - w0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * s0 + (t3 - 2 * t2 + t) * h * d0 +
                       (-2 * t3 + 3 * t2) * s1 + (t3 - t2) * h * d1;
  const double slope = ((6 * t2 - 6 * t) * s0 + (3 * t2 - 4 * t + 1) * h * d0 +
                        (-6 * t2 + 6 * t) * s1 + (3 * t2 - 2 * t) * h * d1) /
                       h;
  return Hermite{value, slope};
}

}  // namespace

TimeMapCache::TimeMapCache(FieldSpec spec, const TimeMapOptions& opts)
    : spec_(std::move(spec)), base_(spec_.delta_coord()), lambda_(spec_.lambda()) {
  const double w_b = base_.w();
  if (!(opts.w_cap > w_b)) throw DomainError("time map w cap lies above the base point");

  QuadOptions q;
  q.tol = opts.quad_tol;
  q.max_panel = opts.max_segment;
  auto slope = [this](double w) { return slope_exact(w); };
  auto piece = [&](double a, double b) { return integrate_1d(slope, a, b, q).value; };

  w_.push_back(w_b);
  s_.push_back(0.0);
  d_.push_back(-evaluate(spec_, base_).deviation * base_.L());

  double h = opts.max_segment / 8;
  while (w_.back() < opts.w_cap) {
    const double w0 = w_.back();
    const double s0 = s_.back();
    const double d0 = d_.back();
    h = std::min({2 * h, opts.max_segment, opts.w_cap - w0});
    double s_mid = s0 + piece(w0, w0 + h / 2);
    for (;;) {
      const double wm = w0 + h / 2;
      const double w1 = w0 + h;
      const double s1 = s_mid + piece(wm, w1);
      const double d1 = slope_exact(w1);
      const double dm = slope_exact(wm);
      const double err = std::abs(hermite(w0, s0, d0, w1, s1, d1, wm).value - s_mid);
      if (err <= opts.table_tol * (1 + std::abs(s_mid)) || h < 1e-9) {
        // Keep the midpoint too: the tabulated halves are tighter than the check.
        max_err_ = std::max(max_err_, err);
        w_.push_back(wm);
        s_.push_back(s_mid);
        d_.push_back(dm);
        w_.push_back(w1 >= opts.w_cap ? opts.w_cap : w1);
        s_.push_back(s1);
        d_.push_back(d1);
        break;
      }
      h /= 2;
      s_mid = s0 + piece(w0, w0 + h / 2);
    }
  }
}

double TimeMapCache::slope_exact(double w) const {
  const LogCoord p = w <= w_.front() ? base_ : LogCoord::from_w(w);
  return -evaluate(spec_, p).deviation * p.L();
}

std::size_t TimeMapCache::segment_of(double w) const {
  if (w > w_.back()) {
    throw RangeExceeded("point lies beyond the time map's w cap " + std::to_string(w_.back()));
  }
  const auto it = std::upper_bound(w_.begin(), w_.end(), w);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - w_.begin(), 1));
  return std::min(i, w_.size() - 1) - 1;
}

double TimeMapCache::sigma(double w) const {
  if (w <= w_.front()) return 0.0;
  const std::size_t i = segment_of(w);
  return hermite(w_[i], s_[i], d_[i], w_[i + 1], s_[i + 1], d_[i + 1], w).value;
}

double TimeMapCache::sigma_slope(double w) const {
  const std::size_t i = w <= w_.front() ? 0 : segment_of(w);
  return hermite(w_[i], s_[i], d_[i], w_[i + 1], s_[i + 1], d_[i + 1], w).slope;
}

double TimeMapCache::tau(LogCoord p) const {
  if (!spec_.contains(p)) throw DomainError("tau: point lies above the base point");
  if (p == base_) return 0.0;
  return (p.z() - base_.z()) / lambda_ + sigma(p.w());
}

double TimeMapCache::dtau_dz(LogCoord p) const {
  return 1.0 / lambda_ + sigma_slope(p.w()) / p.z();
}

LogCoord TimeMapCache::tau_inv(double t) const {
  if (!std::isfinite(t)) throw RangeExceeded("tau_inv: time is not finite");
  if (t < 0.0) throw RangeExceeded("tau_inv: negative time lies above the base point");
  if (t == 0.0) return base_;
  const LogCoord bottom = LogCoord::from_w(w_.back());
  const double t_max = (bottom.z() - base_.z()) / lambda_ + s_.back();
  if (t > t_max) throw RangeExceeded("tau_inv: time lies beyond the time map's w cap");

  auto fdf = [&](double z) {
    const LogCoord p = z >= base_.z() ? base_ : (z <= bottom.z() ? bottom : LogCoord::from_z(z));
    return std::pair{tau(p) - t, dtau_dz(p)};
  };
  // Linear-part guess; sigma is a lower-order correction.
  const double guess = base_.z() + lambda_ * t;
  const double z = newton_bisect(fdf, bottom.z(), base_.z(), guess, 1e-300, 1e-15);
  return LogCoord::from_z(z);
}

double tau(const TimeMapCache& cache, LogCoord p) { return cache.tau(p); }

LogCoord tau_inv(const TimeMapCache& cache, double t) { return cache.tau_inv(t); }

LogCoord flow(const TimeMapCache& cache, double t, LogCoord p) {
  if (t == 0.0) {
    if (!cache.spec().contains(p)) throw DomainError("flow: point lies outside the domain");
    return p;
  }
  return cache.tau_inv(cache.tau(p) + t);
}

double flow_derivative(const TimeMapCache& cache, double t, LogCoord p) {
  const LogCoord q = flow(cache, t, p);
  const FieldSpec& spec = cache.spec();
  return std::exp(q.z() - p.z()) * eval_ratio(spec, q) / eval_ratio(spec, p);
}

}  // namespace germflow
