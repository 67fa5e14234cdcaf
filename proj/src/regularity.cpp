#include "germflow/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "germflow/errors.hpp"
#include "germflow/stats.hpp"
#include "germflow/variation.hpp"

namespace germflow {

namespace {

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = j + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  return out;
}

GrowthFit best_fit(const TailSamples& s) {
  const std::size_t n = s.values.size();
  const std::size_t first = n - (n + 1) / 2;
  GrowthFit best;
  best.r2 = -1.0;
  for (Gauge g : {Gauge::W, Gauge::LogW}) {
    std::vector<double> x, y;
    bool ok = true;
    for (std::size_t i = first; i < n; ++i) {
      const double w = s.w_grid[i];
      if (g == Gauge::LogW && !(w > 0.0)) {
        ok = false;
        break;
      }
      x.push_back(g == Gauge::W ? w : std::log(w));
      y.push_back(s.values[i]);
    }
    if (!ok) continue;
    const LinearFit f = least_squares(x, y);
    if (f.r2 > best.r2) best = GrowthFit{g, f.slope, f.intercept, f.r2};
  }
  if (best.r2 < 0.0) best = GrowthFit{};
  return best;
}

}  // namespace

std::string_view label_name(TailLabel l) noexcept {
  switch (l) {
    case TailLabel::Convergent:
      return "CONVERGENT";
    case TailLabel::BoundedOscillating:
      return "BOUNDED_OSCILLATING";
    case TailLabel::Divergent:
      return "DIVERGENT";
    case TailLabel::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::string_view gauge_name(Gauge g) noexcept {
  switch (g) {
    case Gauge::W:
      return "w";
    case Gauge::LogW:
      return "ln w";
    case Gauge::None:
      return "none";
  }
  return "?";
}

std::string_view tri_name(Tri t) noexcept {
  switch (t) {
    case Tri::Yes:
      return "yes";
    case Tri::No:
      return "no";
    case Tri::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

TailBehavior tail_behavior(const TailSamples& samples, const TailParams& p) {
  const std::size_t n = samples.values.size();
  if (n < 16 || samples.w_grid.size() != n) {
    throw InsufficientSamples("tail_behavior needs at least 16 samples");
  }
  for (double v : samples.values) {
    if (!std::isfinite(v)) throw NonFinite("tail sample is not finite");
  }
  TailBehavior out;
  out.limit = samples.values.back();
  const auto [lo, hi] = std::minmax_element(samples.values.begin(), samples.values.end());
  out.min = *lo;
  out.max = *hi;
  out.fit = best_fit(samples);

  const auto tail_begin = samples.values.end() - static_cast<std::ptrdiff_t>((n + 3) / 4);
  const auto [tlo, thi] = std::minmax_element(tail_begin, samples.values.end());
  if (*thi - *tlo < p.conv_tol) {
    out.label = TailLabel::Convergent;
  } else if (out.fit.gauge != Gauge::None && out.fit.r2 >= p.r2_min &&
             std::abs(out.fit.slope) >= p.slope_min) {
    out.label = TailLabel::Divergent;
  } else if (out.max - out.min < p.bound_cap) {
    out.label = TailLabel::BoundedOscillating;
  } else {
    out.label = TailLabel::Inconclusive;
  }
  return out;
}

RegularityVerdict classify_pair(const FieldSpec& X, const FieldSpec& Y,
                                const ClassifyParams& params) {
  RegularityVerdict v;
  auto multiplier = [](const FieldSpec& f) {
    try {
      const double m = multiplier_estimate(f).value;
      if (!(std::abs(m) > 1e-12)) throw NotHyperbolic("multiplier is zero: " + f.to_string());
      return m;
    } catch (const NonConvergence&) {
      throw NotHyperbolic("no multiplier estimate for " + f.to_string());
    }
  };
  v.multiplier_x = multiplier(X);
  v.multiplier_y = multiplier(Y);
  v.delta = std::min(X.delta_coord(), Y.delta_coord());

  const double w0 = v.delta.w();
  const double w1 = params.w_max.value_or(w0 + params.w_span);
  if (!(w1 > w0)) throw DomainError("classify: w_max must exceed w(delta)");
  if (params.samples < 16) throw InsufficientSamples("classify needs at least 16 samples");
  const std::vector<double> grid = linear_grid(w0, w1, params.samples);

  const double lx = X.lambda();
  const double ly = Y.lambda();
  TailSamples ratio;
  ratio.w_grid = grid;
  ratio.values.resize(grid.size());
  for_each_index(params.policy, grid.size(), [&](std::size_t j) {
    const LogCoord p = j == 0 ? v.delta : LogCoord::from_w(grid[j]);
    const FieldJet jx = evaluate(X, p);
    const FieldJet jy = evaluate(Y, p);
    // ln(X/Y); with equal multipliers the ratio is (1 + lambda dev_Y)/(1 + lambda dev_X).
    ratio.values[j] = lx == ly ? std::log1p(lx * jy.deviation) - std::log1p(lx * jx.deviation)
                               : std::log(jx.ratio / jy.ratio);
  });

  const Integrand f{[&](LogCoord p) {
                      return evaluate(X, p).deviation - evaluate(Y, p).deviation;
                    },
                    Density::Z};
  TailSamples integral = tail_sequence(f, v.delta, grid, params.quad, params.policy);
  // The constant 1/lambda_X - 1/lambda_Y integrates to c (L_eps - L_delta).
  const double c = 1.0 / lx - 1.0 / ly;
  if (c != 0.0) {
    for (std::size_t j = 1; j < grid.size(); ++j) {
      integral.values[j] += c * (std::exp(grid[j]) - v.delta.L());
    }
  }

  v.log_ratio = tail_behavior(ratio, params.tail);
  v.time_integral = tail_behavior(integral, params.tail);

  const TailLabel a = v.log_ratio.label;
  const TailLabel b = v.time_integral.label;
  auto bounded = [](TailLabel l) {
    return l == TailLabel::Convergent || l == TailLabel::BoundedOscillating;
  };
  if (std::abs(v.multiplier_x - v.multiplier_y) > params.multiplier_tol) {
    v.bilipschitz = Tri::No;
    v.c1 = Tri::No;
    return v;
  }
  if (a == TailLabel::Divergent || b == TailLabel::Divergent) {
    v.bilipschitz = Tri::No;
  } else if (bounded(a) && bounded(b)) {
    v.bilipschitz = Tri::Yes;
  } else {
    v.bilipschitz = Tri::Inconclusive;
  }
  if (a == TailLabel::Convergent && b == TailLabel::Convergent) {
    v.c1 = Tri::Yes;
  } else if (v.bilipschitz == Tri::No || (bounded(a) && bounded(b))) {
    v.c1 = Tri::No;
  } else {
    v.c1 = Tri::Inconclusive;
  }
  return v;
}

TailSamples ac_integral(const SGenSpec& sgen, AcIntegral which, std::span<const double> w_grid,
                        const QuadOptions& q, ExecPolicy policy) {
  const Integrand f{[&sgen, which](LogCoord p) {
                      const double w = p.w();
                      const double iL = p.inv_L();
                      switch (which) {
                        case AcIntegral::AbsDu:
                          return std::abs(sgen.x_du_at(w, iL));
                        case AcIntegral::XDuSquared: {
                          const double v = sgen.x_du_at(w, iL);
                          return v * v;
                        }
                        case AcIntegral::AbsDXDu:
                          return std::abs(sgen.x_d_xdu_at(w, iL));
                      }
                      return 0.0;
                    },
                    Density::Z};
  return tail_sequence(f, sgen.delta_coord(), w_grid, q, policy);
}

bool AcConditionsReport::all_hold() const noexcept {
  return std::all_of(std::begin(cond), std::end(cond), [](const AcCondition& c) { return c.holds; });
}

AcConditionsReport check_ac_conditions(const SGenSpec& sgen, const AcParams& params) {
  AcConditionsReport r;
  r.alpha = sgen.alpha();
  r.delta = sgen.delta_coord();
  r.min_one_plus_u = sgen.min_one_plus_u();
  r.degenerate = sgen.alpha() == 0.0;
  const double w0 = r.delta.w();
  const double tol = params.tail.conv_tol;

  // Pointwise limits (i), (ii), (v).
  const std::vector<double> pts = geometric_grid(w0, params.w_point_max, params.point_samples);
  auto pointwise = [&](auto&& g) {
    TailSamples s;
    s.w_grid = pts;
    for (double w : pts) s.values.push_back(g(w, std::exp(-w)));
    return s;
  };
  auto to_zero = [&](const TailBehavior& t) {
    return t.label == TailLabel::Convergent && std::abs(t.limit) < tol;
  };

  const TailSamples s_vals = pointwise([&](double w, double) { return sgen.s_at(w); });
  r.cond[0].tail = tail_behavior(s_vals, params.tail);
  r.cond[0].holds = to_zero(r.cond[0].tail);

  const TailSamples u_vals = pointwise([&](double w, double iL) { return sgen.u_at(w, iL); });
  r.cond[1].tail = tail_behavior(u_vals, params.tail);
  const double min_u = *std::min_element(u_vals.values.begin(), u_vals.values.end());
  r.cond[1].holds = to_zero(r.cond[1].tail) && 1.0 + min_u > 0.0 && r.min_one_plus_u > 0.0;

  const TailSamples xdu_vals =
      pointwise([&](double w, double iL) { return sgen.x_du_at(w, iL); });
  r.cond[4].tail = tail_behavior(xdu_vals, params.tail);
  r.cond[4].holds = to_zero(r.cond[4].tail);

  // Integrability (iii), (vi), (vii).
  const std::vector<double> lin = linear_grid(w0, w0 + params.w_span, params.samples);
  const std::pair<int, AcIntegral> integrals[] = {
      {2, AcIntegral::AbsDu}, {5, AcIntegral::XDuSquared}, {6, AcIntegral::AbsDXDu}};
  for (const auto& [idx, which] : integrals) {
    r.cond[idx].tail =
        tail_behavior(ac_integral(sgen, which, lin, params.quad, params.policy), params.tail);
    r.cond[idx].holds = r.cond[idx].tail.label == TailLabel::Convergent;
  }

  // (iv): the integral of |Ds| from eps to delta is |alpha| times the
  // variation of s(w) on [w(delta), ln|ln eps|].
  const double lo = std::max(10.0, 2.0 * w0);
  const std::vector<double> vgrid = geometric_grid(lo, params.w_var_max, params.var_samples);
  const VariationCurve curve = shat_variation_curve(vgrid, w0);
  TailSamples ds;
  ds.w_grid = vgrid;
  for (double v : curve.values) ds.values.push_back(std::abs(sgen.alpha()) * v);
  r.cond[3].tail = tail_behavior(ds, params.tail);
  r.cond[3].holds = !r.degenerate && r.cond[3].tail.label == TailLabel::Divergent &&
                    r.cond[3].tail.fit.gauge == Gauge::LogW;
  return r;
}

FlowAcBound flow_ac_bound_check(const FieldSpec& X, double t, LogCoord a, LogCoord eps,
                                const QuadOptions& q) {
  return flow_ac_bound_check(TimeMapCache(X), t, a, eps, q);
}

FlowAcBound flow_ac_bound_check(const TimeMapCache& cache, double t, LogCoord a, LogCoord eps,
                                const QuadOptions& q) {
  const FieldSpec& X = cache.spec();
  if (!std::isfinite(t) || t == 0.0) throw DomainError("flow_ac_bound_check needs t != 0");
  if (!(eps < a)) throw DomainError("flow_ac_bound_check needs eps < a");
  if (!X.contains(a)) throw DomainError("flow_ac_bound_check needs a <= delta");

  const Integrand f{[&](LogCoord p) {
                      const FieldJet j = evaluate(X, p);
                      const double dx_t = eval_DX(X, flow(cache, t, p));
                      return std::abs(dx_t - j.dx) / std::abs(j.ratio);
                    },
                    Density::Z};
  const double lhs = integrate(f, eps, a, q).value;

  const LogCoord top = t > 0.0 ? a : flow(cache, t, a);
  const double w_top = top.w();
  const double w_eps = eps.w();
  auto dx_of_w = [&](double w) {
    const LogCoord p = w <= w_top ? top : (w >= w_eps ? eps : LogCoord::from_w(w));
    return eval_DX(X, p);
  };
  const double tv = total_variation(dx_of_w, w_top, w_eps, 1e-12).value;
  const double rhs = 2.0 * std::abs(t) * tv;
  return FlowAcBound{lhs, rhs, lhs <= rhs * (1.0 + 1e-3)};
}

}  // namespace germflow
