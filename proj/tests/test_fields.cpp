#include <cmath>
#include <numbers>

#include "doctest.h"
#include "germflow/errors.hpp"
#include "germflow/fields.hpp"

using namespace germflow;

namespace {

const double e = std::numbers::e;

// Central difference of X in x with step x * 1e-6.
double fd_DX(const FieldSpec& f, double x) {
  const double h = x * 1e-6;
  return (eval_X(f, LogCoord::from_x(x + h)) - eval_X(f, LogCoord::from_x(x - h))) / (2 * h);
}

std::vector<FieldSpec> sample_fields() {
  return {
      FieldSpec::linear(-1.5),
      FieldSpec::make(Family::Xalpha, 1.0),
      FieldSpec::make(Family::Xalpha, -0.7, -2.0),
      FieldSpec::make(Family::Yalpha, 1.0),
      FieldSpec::make(Family::XbarAlpha, 1.0),
      FieldSpec::make(Family::XbarbarAlpha, 1.0),
      FieldSpec::make(Family::XtildeAlpha, 1.0),
      FieldSpec::make(Family::XtildeAlpha, -2.0, -0.5),
      field_from_s(SGenSpec(1.0)),
      field_from_s(SGenSpec(-2.0)),
      FieldSpec::perturb_a(FieldSpec::linear(-2.0), 1.0),
      FieldSpec::perturb_a(FieldSpec::make(Family::Xalpha, 1.0), 0.5),
      FieldSpec::perturb_b(FieldSpec::linear(), 1.0),
      FieldSpec::perturb_b(FieldSpec::make(Family::XtildeAlpha, 1.0), -1.0),
  };
}

}  // namespace

TEST_CASE("linear field") {
  const FieldSpec f = FieldSpec::linear();
  CHECK(eval_X(f, LogCoord::from_z(-5)) == doctest::Approx(-std::exp(-5.0)).epsilon(1e-15));
  CHECK(eval_DX(f, LogCoord::from_z(-40)) == -1.0);
  CHECK(f.delta_coord().z() == -3.0);
}

TEST_CASE("xalpha at x = e^-10") {
  const FieldSpec f = FieldSpec::make(Family::Xalpha, 1.0);
  const double x = std::exp(-10.0);
  CHECK(eval_X(f, LogCoord::from_z(-10)) == doctest::Approx(-x * 10.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("xtilde at x = e^-e uses cos(ln|ln x|) = cos 1") {
  const FieldSpec f = FieldSpec::make(Family::XtildeAlpha, 1.0, -1.0, 0.07);
  const long double x = std::exp(-(long double)e);
  const long double oracle = -x / (1.0L + std::cos(1.0L) / (-(long double)e));
  CHECK(eval_X(f, LogCoord::from_z(-e)) == doctest::Approx((double)oracle).epsilon(1e-14));
}

TEST_CASE("DX matches finite differences at audit points") {
  for (const FieldSpec& f : sample_fields()) {
    CAPTURE(f.to_string());
    for (LogCoord p : audit_grid(f, 64, 5.5)) {
      if (p == f.delta_coord() || p.L() > 600) continue;
      const double exact = eval_DX(f, p);
      const double fd = fd_DX(f, p.x());
      CHECK(std::abs(exact - fd) <= 1e-5 * std::abs(exact));
    }
  }
}

TEST_CASE("DX tends to the multiplier") {
  const FieldSpec f = FieldSpec::make(Family::Xalpha, 1.0);
  CHECK(std::abs(eval_DX(f, LogCoord::from_z(-100)) + 1.0) < 2.0 / 100);
  const FieldSpec s = field_from_s(SGenSpec(1.0));
  const double x = std::exp(-20.0);
  CHECK(std::abs(eval_DX(s, LogCoord::from_z(-20)) - fd_DX(s, x)) < 1e-6 * std::abs(fd_DX(s, x)));
}

TEST_CASE("X/x converges to lambda along w = 2..12") {
  for (const FieldSpec& f : sample_fields()) {
    CAPTURE(f.to_string());
    const double w0 = std::max(2.0, f.delta_coord().w());
    double last = 1.0;
    for (double w = w0; w <= 12.0; w += 0.5) last = std::abs(eval_ratio(f, LogCoord::from_w(w)) - f.lambda());
    CHECK(last < 1e-3);
  }
}

TEST_CASE("s-profile closed forms") {
  const SGenSpec sg(1.0, 0.07);
  SUBCASE("s at x = e^-e, where w = 1") {
    CHECK(eval_s(sg, LogCoord::from_z(-e)) == doctest::Approx(-std::sin(1.0)).epsilon(1e-15));
  }
  SUBCASE("u + x Ds = 0") {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const LogCoord p = LogCoord::from_w(1.0 + 0.05 * i);
      worst = std::max(worst, std::abs(eval_u(sg, p) + p.x() * eval_Ds(sg, p)));
    }
    CHECK(worst < 1e-12);
  }
  SUBCASE("Ds, Du and D(x Du) against finite differences in x") {
    for (double z : {-3.0, -5.0, -9.0, -20.0, -60.0}) {
      const double x = std::exp(z);
      const double h = x * 1e-6;
      auto at = [](double v) { return LogCoord::from_x(v); };
      const LogCoord p = LogCoord::from_z(z);
      const double ds_fd = (eval_s(sg, at(x + h)) - eval_s(sg, at(x - h))) / (2 * h);
      CHECK(eval_Ds(sg, p) == doctest::Approx(ds_fd).epsilon(1e-6));
      const double du_fd = (eval_u(sg, at(x + h)) - eval_u(sg, at(x - h))) / (2 * h);
      CHECK(eval_Du(sg, p) == doctest::Approx(du_fd).epsilon(1e-6));
      auto xdu = [&](double v) { return sg.x_du_at(at(v).w(), at(v).inv_L()); };
      const double dxdu_fd = (xdu(x + h) - xdu(x - h)) / (2 * h);
      CHECK(sg.x_d_xdu_at(p.w(), p.inv_L()) == doctest::Approx(x * dxdu_fd).epsilon(1e-6));
    }
  }
  SUBCASE("u tends to 0") {
    CHECK(std::abs(eval_u(SGenSpec(1.0), LogCoord::from_z(-1e4))) < 1e-3);
  }
  SUBCASE("outside the domain") {
    CHECK_THROWS_AS((void)eval_s(SGenSpec(1.0), LogCoord::from_z(-3.0)), DomainError);
    CHECK_THROWS_AS(SGenSpec(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(SGenSpec(10.0, 0.06), DegeneracyError);
  }
}

TEST_CASE("field_from_s") {
  SUBCASE("alpha = 0 is the linear field") {
    const FieldSpec f = field_from_s(SGenSpec(0.0));
    for (LogCoord p : audit_grid(f)) {
      CHECK(eval_ratio(f, p) == -1.0);
      CHECK(eval_DX(f, p) == -1.0);
    }
  }
  SUBCASE("alpha = 1 at x = e^-e") {
    const SGenSpec sg(1.0, 0.07);
    const FieldSpec f = field_from_s(sg);
    const LogCoord p = LogCoord::from_z(-e);
    CHECK(eval_X(f, p) == doctest::Approx(-p.x() / (1 + eval_u(sg, p))).epsilon(1e-15));
    CHECK(f.lambda() == -1.0);
  }
  SUBCASE("certified bound on 1 + u holds on the audit grid") {
    const SGenSpec sg(2.0);
    const FieldSpec f = field_from_s(sg);
    for (LogCoord p : audit_grid(f)) CHECK(1 + eval_u(sg, p) >= sg.min_one_plus_u());
  }
}

TEST_CASE("multiplier estimates") {
  CHECK(multiplier_estimate(FieldSpec::linear(-2.0)).value == -2.0);
  CHECK(multiplier_estimate(FieldSpec::make(Family::Xalpha, 3.0)).value == doctest::Approx(-1).epsilon(1e-3));
  CHECK(multiplier_estimate(FieldSpec::perturb_a(FieldSpec::linear(-2.0), 1.0)).value ==
        doctest::Approx(-2).epsilon(1e-3));
  CHECK(multiplier_estimate(field_from_s(SGenSpec(1.0))).value == doctest::Approx(-1).epsilon(1e-3));
}

TEST_CASE("perturbation with alpha = 0 is the base, bitwise") {
  for (const FieldSpec& base : {FieldSpec::make(Family::Xalpha, 1.0), FieldSpec::make(Family::XtildeAlpha, 0.5)}) {
    const FieldSpec pa = FieldSpec::perturb_a(base, 0.0);
    const FieldSpec pb = FieldSpec::perturb_b(base, 0.0);
    for (LogCoord p : audit_grid(pb)) {
      const FieldJet b = evaluate(base, p);
      CHECK(evaluate(pa, p).ratio == b.ratio);
      CHECK(evaluate(pa, p).dx == b.dx);
      CHECK(evaluate(pb, p).ratio == b.ratio);
      CHECK(evaluate(pb, p).dx == b.dx);
    }
  }
}

TEST_CASE("domains") {
  const FieldSpec f = FieldSpec::make(Family::Xalpha, 1.0);
  CHECK_THROWS_AS((void)eval_X(f, LogCoord::from_z(-2.0)), DomainError);
  CHECK_THROWS_AS(FieldSpec::make(Family::Xalpha, 5.0, -1.0, std::exp(-3.0)), DegeneracyError);
  CHECK_THROWS_AS(FieldSpec::make(Family::XbarAlpha, 1.0, -1.0, 0.5), DomainError);
  CHECK_THROWS_AS(FieldSpec::linear(1.0), DomainError);
  // Default domains keep every audited denominator at least 1/3.
  for (Family fam : {Family::Xalpha, Family::Yalpha, Family::XbarAlpha, Family::XbarbarAlpha, Family::XtildeAlpha}) {
    const FieldSpec g = FieldSpec::make(fam, 4.0);
    for (LogCoord p : audit_grid(g)) CHECK(evaluate(g, p).denominator >= 1.0 / 3.0);
  }
  CHECK(FieldSpec::make(Family::XbarbarAlpha, 1.0).delta_coord().w() > 1.0);
}
