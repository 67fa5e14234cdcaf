#include <cmath>
#include <numbers>

#include "doctest.h"
#include "germflow/conjugacy.hpp"
#include "germflow/errors.hpp"
#include "germflow/quadrature.hpp"
#include "germflow/variation.hpp"

using namespace germflow;

namespace {

const double pi = std::numbers::pi;

double s_of(double w) { return -std::sin(w) / w; }

// Plain bisection on tan(a) - a, an independent route to a_k.
double bisect_tan_root(int k) {
  double lo = k * pi + 1e-9, hi = k * pi + pi / 2 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tan(mid) - mid < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("grid total variation") {
  CHECK(total_variation([](double x) { return std::sin(x); }, 0, 2 * pi).value ==
        doctest::Approx(4.0).epsilon(1e-4));
  CHECK(total_variation([](double x) { return x * x * x; }, -1, 2).value == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(total_variation([](double) { return 3.0; }, 0, 1).value == 0.0);
}

TEST_CASE("fixed points of tan") {
  const TanFixedPoints tp = tan_fixed_points(50);
  REQUIRE(tp.a.size() == 50);
  CHECK(tp.a[0] == doctest::Approx(4.4934094579).epsilon(1e-10));
  CHECK(tp.a[0] == doctest::Approx(bisect_tan_root(1)).epsilon(1e-12));
  CHECK(tp.a[6] == doctest::Approx(bisect_tan_root(7)).epsilon(1e-12));
  CHECK(std::abs(tp.a[49] - (50 * pi + pi / 2)) < 0.01);
  for (std::size_t k = 0; k < 50; ++k) {
    CHECK(tp.residual[k] < 1e-10);
    CHECK(tp.a[k] > (k + 1) * pi);
    CHECK(tp.a[k] < (k + 1) * pi + pi / 2);
    // tan a = a gives |sin a| = a / sqrt(1 + a^2).
    CHECK(std::abs(shat(1 / tp.a[k])) == doctest::Approx(1 / std::sqrt(1 + tp.a[k] * tp.a[k])).epsilon(1e-12));
  }
}

TEST_CASE("shat variation") {
  const double wd = default_w_delta();
  CHECK(wd == doctest::Approx(std::log(4.0)));
  // Below the first extremum s is monotone.
  CHECK(shat_variation(4.0, wd) == doctest::Approx(std::abs(s_of(4.0) - s_of(wd))).epsilon(1e-14));
  const double grid = total_variation(s_of, wd, 50.0, 1e-9).value;
  CHECK(std::abs(grid - shat_variation(50.0, wd)) < 1e-4);

  // Between 1/a_3 and 1/a_1 in y the variation of shat is the jump sum.
  const TanFixedPoints tp = tan_fixed_points(3);
  const double jumps = std::abs(shat(1 / tp.a[1]) - shat(1 / tp.a[0])) + std::abs(shat(1 / tp.a[2]) - shat(1 / tp.a[1]));
  CHECK(total_variation(shat, 1 / tp.a[2], 1 / tp.a[0], 1e-12).value == doctest::Approx(jumps).epsilon(1e-6));

  // V(A) - (2/pi) ln K(A) stays in a narrow band.
  double lo = 1e9, hi = -1e9;
  for (double A : {1e2, 1e3, 1e4, 1e5}) {
    const double K = std::floor(A / pi + 0.5);
    const double d = shat_variation(A, wd) - 2 / pi * std::log(K);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK(hi - lo < 0.05);
}

TEST_CASE("asymptote fits") {
  VariationCurve c;
  for (double A : geometric_grid(10, 1e4, 20)) {
    c.thresholds.push_back(A);
    c.values.push_back(2 / pi * std::log(A) + 0.25);
  }
  const LinearFit f = asymptote_fit(c, [](double A) { return std::log(A); });
  CHECK(f.slope == doctest::Approx(2 / pi).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0));
  c.thresholds.resize(7);
  c.values.resize(7);
  CHECK_THROWS_AS((void)asymptote_fit(c, [](double A) { return A; }), InsufficientSamples);
  const auto g = geometric_grid(1, 1000, 4);
  CHECK(g[1] == doctest::Approx(10));
  CHECK(g.back() == 1000);
}

TEST_CASE("log derivative of the s-generated conjugacy") {
  SUBCASE("beta = 0 is the closed form") {
    const ConjugacyLogDerivative lg{1.0, 0.0};
    for (double w : {2.0, 2.7, 3.9, 5.5}) {
      const double z = -std::exp(w), h = 1e-6;
      auto zh = [](double zz) { return closed_form(ClosedFormKind::HsGen, 1.0, LogCoord::from_z(zz)).z(); };
      const double ln_dh = zh(z) - z + std::log((zh(z + h) - zh(z - h)) / (2 * h));
      CHECK(lg.phi(w) == doctest::Approx(ln_dh).epsilon(1e-7).scale(1));
    }
  }
  SUBCASE("image and derivative") {
    const ConjugacyLogDerivative lg{1.5, 0.5};
    for (double w : {2.0, 7.0, 30.0, 400.0}) {
      const double wh = lg.w_image(w);
      // h_beta(H x) = h_alpha(x) in z.
      const double lhs = -std::exp(wh) - 0.5 * s_of(wh);
      const double rhs = -std::exp(w) - 1.5 * s_of(w);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
      const double h = 1e-5;
      CHECK(lg.dphi(w) == doctest::Approx((lg.phi(w + h) - lg.phi(w - h)) / (2 * h)).epsilon(1e-5).scale(1e-6));
    }
  }
}

TEST_CASE("conjugacy variation curves") {
  const auto grid = geometric_grid(100, 10000, 24);
  const auto flat = conjugacy_variation_curve(0.7, 0.7, grid);
  for (double v : flat.values) CHECK(v == 0.0);

  const auto c10 = conjugacy_variation_curve(1.0, 0.0, grid);
  const auto c15 = conjugacy_variation_curve(1.5, 0.5, grid);
  for (std::size_t j = 1; j < grid.size(); ++j) CHECK(c10.values[j] >= c10.values[j - 1]);
  const LinearFit f10 = asymptote_fit(c10, [](double A) { return std::log(A); });
  const LinearFit f15 = asymptote_fit(c15, [](double A) { return std::log(A); });
  CHECK(f10.slope == doctest::Approx(2 / pi).epsilon(0.07 / (2 / pi)));
  CHECK(f15.slope / f10.slope == doctest::Approx(1.0).epsilon(0.1));

  // Second route: integrate |phi'| between thresholds.
  const ConjugacyLogDerivative lg{1.0, 0.0};
  const double w0 = conjugacy_w_delta(1.0, 0.0);
  double acc = integrate_1d([&](double w) { return std::abs(lg.dphi(w)); }, w0, grid[0], {1e-12, 10'000'000, 0.05}).value;
  CHECK(acc == doctest::Approx(c10.values[0]).epsilon(1e-8));
  for (std::size_t j = 1; j < 6; ++j) {
    acc += integrate_1d([&](double w) { return std::abs(lg.dphi(w)); }, grid[j - 1], grid[j], {1e-12, 10'000'000, 0.05}).value;
    CHECK(acc == doctest::Approx(c10.values[j]).epsilon(1e-8));
  }

  const auto s = conjugacy_variation_curve(1.0, -0.5, grid, ExecPolicy::Serial);
  const auto p = conjugacy_variation_curve(1.0, -0.5, grid, ExecPolicy::Parallel);
  CHECK(s.values == p.values);
  CHECK_THROWS_AS((void)conjugacy_variation_curve(1.0, 0.0, std::vector<double>{1.0, 2.0}), DomainError);
}
