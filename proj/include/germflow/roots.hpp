#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "germflow/errors.hpp"

namespace germflow {

/// Root of f on [lo, hi] where f(lo), f(hi) have opposite signs (or one is 0).
///
/// `fdf(x)` returns {f(x), f'(x)}. Iteration starts at x0 (the midpoint if x0
/// is outside the bracket). Newton steps are taken when they land strictly
/// inside the current bracket, bisection otherwise, so the bracket shrinks
/// every iteration. Stops when |step| <= atol + rtol |x|.
template <class FDF>
double newton_bisect(FDF&& fdf, double lo, double hi, double x0, double atol, double rtol,
                     int max_iter = 400) {
  const double flo = fdf(lo).first;
  const double fhi = fdf(hi).first;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NonConvergence("newton_bisect: root not bracketed");
  const bool rising = fhi > 0.0;

  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const auto [f, df] = fdf(x);
    if (!std::isfinite(f)) throw NonFinite("newton_bisect: non-finite function value");
    if (f == 0.0) return x;
    if ((f > 0.0) == rising) {
      hi = x;
    } else {
      lo = x;
    }
    double next = x - f / df;
    if (!(df != 0.0) || !std::isfinite(next) || !(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double step = std::abs(next - x);
    x = next;
    const double tol = atol + rtol * std::abs(x);
    if (step <= tol || hi - lo <= tol) return x;
  }
  throw NonConvergence("newton_bisect: iteration cap reached");
}

/// Brent's method on a sign-changing bracket; derivative-free.
template <class F>
double brent(F&& f, double a, double b, double xtol, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw NonConvergence("brent: root not bracketed");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if (!std::isfinite(fb)) throw NonFinite("brent: non-finite function value");
  }
  throw NonConvergence("brent: iteration cap reached");
}

}  // namespace germflow
