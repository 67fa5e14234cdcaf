#include "germflow/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "germflow/errors.hpp"
#include "germflow/fields.hpp"
#include "germflow/roots.hpp"

namespace germflow {

namespace {

constexpr double kPi = std::numbers::pi;
// Scan step for critical points of phi; roots of phi' are about pi apart.
constexpr double kScanStep = 0.05;

double s_of(double w) { return -std::sin(w) / w; }

// Roots a_k of tan(a) = a with w_lo < a_k < w_hi, in order.
std::vector<double> tan_roots_between(double w_lo, double w_hi) {
  if (!(w_hi > kPi)) return {};
  const auto K = static_cast<std::size_t>(std::floor(w_hi / kPi)) + 1;
  const TanFixedPoints tp = tan_fixed_points(K);
  std::vector<double> out;
  for (double a : tp.a) {
    if (a > w_lo && a < w_hi) out.push_back(a);
  }
  return out;
}

}  // namespace

TVResult total_variation(const std::function<double(double)>& f, double a, double b,
                         double refine_tol, std::size_t max_evals) {
  if (!(a <= b)) throw DomainError("total_variation needs a <= b");
  std::size_t n = 16;
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    v[i] = f(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
  }
  std::size_t evals = n + 1;
  auto sum = [](const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) s += std::abs(y[i] - y[i - 1]);
    return s;
  };
  double tv = sum(v);
  // A single quiet doubling can miss an extremum that no new node has hit yet.
  int quiet = 0;
  for (;;) {
    if (evals + n > max_evals) {
      throw BudgetExceeded("total_variation: refinement budget exhausted");
    }
    std::vector<double> fine(2 * n + 1);
    for (std::size_t i = 0; i <= n; ++i) fine[2 * i] = v[i];
    for (std::size_t i = 0; i < n; ++i) {
      fine[2 * i + 1] =
          f(a + (b - a) * static_cast<double>(2 * i + 1) / static_cast<double>(2 * n));
    }
    evals += n;
    n *= 2;
    v = std::move(fine);
    const double next = sum(v);
    const double inc = next - tv;
    tv = next;
    quiet = inc < refine_tol ? quiet + 1 : 0;
    if (quiet >= 2 && n >= 1024) return TVResult{tv, inc, evals};
  }
}

TanFixedPoints tan_fixed_points(std::size_t K) {
  if (K < 1) throw DomainError("tan_fixed_points needs K >= 1");
  TanFixedPoints out;
  out.a.reserve(K);
  out.residual.reserve(K);
  auto fdf = [](double a) {
    return std::pair{a * std::cos(a) - std::sin(a), -a * std::sin(a)};
  };
  for (std::size_t k = 1; k <= K; ++k) {
    const double lo = static_cast<double>(k) * kPi;
    const double c = lo + kPi / 2;
    const double a = newton_bisect(fdf, lo, c, c - 1.0 / c, 0.0, 4e-16);
    out.a.push_back(a);
    out.residual.push_back(std::abs(std::cos(a) / std::sin(a) - 1.0 / a));
  }
  return out;
}

double shat(double y) noexcept { return -y * std::sin(1.0 / y); }

double default_w_delta() { return SGenSpec(1.0).delta_coord().w(); }

double shat_variation(double A, double w_delta) {
  const double grid[] = {A};
  return shat_variation_curve(grid, w_delta).values.front();
}

VariationCurve shat_variation_curve(std::span<const double> A_grid, double w_delta) {
  if (A_grid.empty()) return {};
  for (std::size_t i = 0; i < A_grid.size(); ++i) {
    if (!(A_grid[i] > w_delta)) throw DomainError("variation thresholds must exceed w(delta)");
    if (i > 0 && !(A_grid[i] > A_grid[i - 1])) {
      throw DomainError("variation thresholds must increase");
    }
  }
  const std::vector<double> roots = tan_roots_between(w_delta, A_grid.back());
  // cum[m] = variation over [w_delta, roots[m-1]].
  std::vector<double> cum(roots.size() + 1, 0.0);
  double prev = s_of(w_delta);
  for (std::size_t m = 0; m < roots.size(); ++m) {
    const double cur = s_of(roots[m]);
    cum[m + 1] = cum[m] + std::abs(cur - prev);
    prev = cur;
  }
  VariationCurve out;
  out.thresholds.assign(A_grid.begin(), A_grid.end());
  for (double A : A_grid) {
    const auto m = static_cast<std::size_t>(std::lower_bound(roots.begin(), roots.end(), A) -
                                            roots.begin());
    const double last = m == 0 ? w_delta : roots[m - 1];
    out.values.push_back(cum[m] + std::abs(s_of(A) - s_of(last)));
  }
  return out;
}

double ConjugacyLogDerivative::w_image(double w) const {
  const double wy = w + std::log1p(alpha * s_of(w) * std::exp(-w));
  const double ey = std::exp(-wy);
  double wh = wy;
  for (int it = 0; it < 100; ++it) {
    const double next = wy + std::log1p(-beta * s_of(wh) * ey);
    if (next == wh) break;
    wh = next;
  }
  return wh;
}

double ConjugacyLogDerivative::phi(double w) const {
  auto psi = [](double g, double v) {
    const SProfile sp = s_profile(v);
    return -g * sp.s + std::log1p(g * sp.s_w * std::exp(-v));
  };
  return psi(alpha, w) - psi(beta, w_image(w));
}

double ConjugacyLogDerivative::dphi(double w) const {
  auto dpsi = [](double g, double v) {
    const SProfile sp = s_profile(v);
    const double e = std::exp(-v);
    return -g * sp.s_w + g * (sp.s_ww - sp.s_w) * e / (1 + g * sp.s_w * e);
  };
  const double wh = w_image(w);
  const double u_a = alpha * s_profile(w).s_w * std::exp(-w);
  const double u_b = beta * s_profile(wh).s_w * std::exp(-wh);
  const double dwh = (1 + u_a) / (1 + u_b) * std::exp(w - wh);
  return dpsi(alpha, w) - dpsi(beta, wh) * dwh;
}

double conjugacy_w_delta(double alpha, double beta) {
  return std::max(SGenSpec(alpha).delta_coord().w(), SGenSpec(beta).delta_coord().w());
}

VariationCurve conjugacy_variation_curve(double alpha, double beta,
                                         std::span<const double> A_grid, ExecPolicy policy) {
  const double w_delta = conjugacy_w_delta(alpha, beta);
  for (std::size_t i = 0; i < A_grid.size(); ++i) {
    if (!(A_grid[i] > w_delta)) throw DomainError("variation thresholds must exceed w(delta)");
    if (i > 0 && !(A_grid[i] > A_grid[i - 1])) {
      throw DomainError("variation thresholds must increase");
    }
  }
  VariationCurve out;
  out.thresholds.assign(A_grid.begin(), A_grid.end());
  if (A_grid.empty()) return out;
  if (alpha == beta) {
    // H is the identity.
    out.values.assign(A_grid.size(), 0.0);
    return out;
  }
  const ConjugacyLogDerivative lg{alpha, beta};
  const double w_max = A_grid.back();

  const auto cells = static_cast<std::size_t>(std::ceil((w_max - w_delta) / kScanStep));
  std::vector<double> nodes(cells + 1), d(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    nodes[i] = i == cells ? w_max : w_delta + kScanStep * static_cast<double>(i);
  }
  for_each_index(policy, cells + 1, [&](std::size_t i) {
    d[i] = lg.dphi(nodes[i]);
    if (!std::isfinite(d[i])) throw NonFinite("conjugacy variation: phi' is not finite");
  });

  std::vector<std::optional<double>> cell_root(cells);
  for_each_index(policy, cells, [&](std::size_t i) {
    if (d[i + 1] == 0.0 && i + 1 < cells) {
      cell_root[i] = nodes[i + 1];
    } else if ((d[i] < 0.0 && d[i + 1] > 0.0) || (d[i] > 0.0 && d[i + 1] < 0.0)) {
      cell_root[i] = brent([&](double w) { return lg.dphi(w); }, nodes[i], nodes[i + 1], 1e-13);
    }
  });

  std::vector<double> breaks{w_delta};
  for (const auto& r : cell_root) {
    if (r) breaks.push_back(*r);
  }
  std::vector<double> phi(breaks.size());
  for_each_index(policy, breaks.size(), [&](std::size_t i) { phi[i] = lg.phi(breaks[i]); });
  std::vector<double> cum(breaks.size(), 0.0);
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    cum[i] = cum[i - 1] + std::abs(phi[i] - phi[i - 1]);
  }

  out.values.resize(A_grid.size());
  for_each_index(policy, A_grid.size(), [&](std::size_t j) {
    const double A = A_grid[j];
    // Last breakpoint strictly below A.
    const auto m = static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), A) -
                                            breaks.begin()) -
                   1;
    out.values[j] = cum[m] + std::abs(lg.phi(A) - phi[m]);
  });
  return out;
}

LinearFit asymptote_fit(const VariationCurve& curve, const std::function<double(double)>& gauge,
                        double tail_fraction) {
  const std::size_t n = curve.values.size();
  if (n < 8 || curve.thresholds.size() != n) {
    throw InsufficientSamples("asymptote_fit needs at least 8 points");
  }
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw DomainError("tail_fraction must lie in (0, 1]");
  }
  const auto m = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
  std::vector<double> x, y;
  for (std::size_t i = n - m; i < n; ++i) {
    x.push_back(gauge(curve.thresholds[i]));
    y.push_back(curve.values[i]);
  }
  return least_squares(x, y);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw DomainError("geometric grid needs 0 < lo < hi and n >= 2");
  }
  std::vector<double> out(n);
  const double r = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? hi : lo * std::exp(r * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace germflow
