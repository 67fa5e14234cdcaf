#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "germflow/errors.hpp"
#include "germflow/fields.hpp"
#include "germflow/quadrature.hpp"

using namespace germflow;

namespace {

const double e = std::numbers::e;

LogCoord Z(double z) { return LogCoord::from_z(z); }

// 1/X - 1/Y as a z-density, for equal multipliers.
Integrand inverse_difference(const FieldSpec& X, const FieldSpec& Y) {
  return {[X, Y](LogCoord p) { return evaluate(X, p).deviation - evaluate(Y, p).deviation; }, Density::Z};
}

}  // namespace

TEST_CASE("integral of -1/x") {
  const Integrand f{[](LogCoord p) { return -1.0 / p.x(); }, Density::X};
  CHECK(integrate(f, Z(-5), Z(-2)).value == doctest::Approx(-3.0).epsilon(1e-10));
  const Integrand g{[](LogCoord) { return -1.0; }, Density::Z};
  CHECK(integrate(g, Z(-5), Z(-2)).value == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("1/X_1 - 1/X_0 between e^-e^2 and e^-e") {
  const FieldSpec X1 = FieldSpec::make(Family::Xalpha, 1.0, -1.0, 0.07);
  const FieldSpec X0 = FieldSpec::make(Family::Xalpha, 0.0, -1.0, 0.07);
  const Integrand f{[&](LogCoord p) { return 1.0 / eval_X(X1, p) - 1.0 / eval_X(X0, p); }, Density::X};
  CHECK(integrate(f, Z(-e * e), Z(-e)).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate(inverse_difference(X1, X0), Z(-e * e), Z(-e)).value ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Du of the s-generated field is stable under tolerance") {
  const SGenSpec sg(1.0, 0.07);
  const Integrand f{[&](LogCoord p) { return eval_Du(sg, p); }, Density::X};
  const double coarse = integrate(f, Z(-std::exp(3.0)), Z(-e), {1e-6}).value;
  const double fine = integrate(f, Z(-std::exp(3.0)), Z(-e), {1e-8}).value;
  CHECK(std::abs(coarse - fine) < 1e-6);
  // Du integrates to u.
  const double exact = eval_u(sg, Z(-e)) - eval_u(sg, Z(-std::exp(3.0)));
  CHECK(fine == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("additivity, linearity, coordinate consistency") {
  const Integrand f{[](LogCoord p) { return std::cos(p.w()) / p.L(); }, Density::Z};
  const Integrand g{[](LogCoord p) { return std::sin(3 * p.w()); }, Density::Z};
  const LogCoord a = Z(-200), b = Z(-30), c = Z(-0.5);
  const double whole = integrate(f, a, c).value;
  CHECK(whole == doctest::Approx(integrate(f, a, b).value + integrate(f, b, c).value).epsilon(1e-10));

  const Integrand comb{[&](LogCoord p) { return 2 * f.eval(p) - 3 * g.eval(p); }, Density::Z};
  CHECK(integrate(comb, a, c).value ==
        doctest::Approx(2 * whole - 3 * integrate(g, a, c).value).epsilon(1e-10));

  const Integrand fx{[&](LogCoord p) { return f.eval(p) / p.x(); }, Density::X};
  CHECK(integrate(fx, Z(-20), Z(-1)).value == doctest::Approx(integrate(f, Z(-20), Z(-1)).value).epsilon(1e-12));

  // Closed form: d(sin w)/dz = -cos(w)/L.
  CHECK(whole == doctest::Approx(std::sin(a.w()) - std::sin(c.w())).epsilon(1e-10));
}

TEST_CASE("plain interval") {
  const auto r = integrate_1d([](double t) { return std::exp(t); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(e - 1).epsilon(1e-14));
  CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("tail sequences") {
  SUBCASE("zero integrand") {
    const Integrand zero{[](LogCoord) { return 0.0; }, Density::Z};
    const TailSamples t = tail_sequence(zero, Z(-3), 20.0, 32);
    for (double v : t.values) CHECK(v == 0.0);
  }
  SUBCASE("xalpha pair grows like 0.3 w") {
    const FieldSpec X = FieldSpec::make(Family::Xalpha, 0.8);
    const FieldSpec Y = FieldSpec::make(Family::Xalpha, 0.5);
    const LogCoord d = std::min(X.delta_coord(), Y.delta_coord());
    const TailSamples t = tail_sequence(inverse_difference(X, Y), d, d.w() + 30, 40);
    REQUIRE(t.values.size() == 40);
    CHECK(t.values.front() == 0.0);
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      CHECK(t.values[j] == doctest::Approx(0.3 * (t.w_grid[j] - d.w())).epsilon(1e-8).scale(1));
    }
  }
  SUBCASE("xtilde pair stays bounded") {
    const FieldSpec X = FieldSpec::make(Family::XtildeAlpha, 1.0);
    const FieldSpec Y = FieldSpec::make(Family::XtildeAlpha, 0.0);
    const LogCoord d = X.delta_coord();
    const TailSamples t = tail_sequence(inverse_difference(X, Y), d, d.w() + 40, 64);
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      CHECK(std::abs(t.values[j]) <= 2.0 + 1e-9);
      CHECK(t.values[j] == doctest::Approx(std::sin(t.w_grid[j]) - std::sin(d.w())).scale(1).epsilon(1e-8));
    }
  }
  SUBCASE("serial and parallel agree bitwise") {
    const FieldSpec X = FieldSpec::make(Family::XtildeAlpha, 1.5);
    const FieldSpec Y = FieldSpec::make(Family::Xalpha, 0.5);
    const LogCoord d = std::min(X.delta_coord(), Y.delta_coord());
    const auto s = tail_sequence(inverse_difference(X, Y), d, d.w() + 25, 33, {}, ExecPolicy::Serial);
    const auto p = tail_sequence(inverse_difference(X, Y), d, d.w() + 25, 33, {}, ExecPolicy::Parallel);
    CHECK(s.values == p.values);
    CHECK(s.evaluations == p.evaluations);
  }
  SUBCASE("too few samples") {
    const Integrand zero{[](LogCoord) { return 0.0; }, Density::Z};
    CHECK_THROWS_AS((void)tail_sequence(zero, Z(-3), 5.0, 4), InsufficientSamples);
  }
}

TEST_CASE("failures") {
  const Integrand wiggle{[](LogCoord p) { return std::sin(40 * p.w()); }, Density::Z};
  CHECK_THROWS_AS((void)integrate(wiggle, Z(-1e6), Z(-1), {1e-14, 200}), BudgetExceeded);
  const Integrand bad{[](LogCoord) { return std::numeric_limits<double>::quiet_NaN(); }, Density::Z};
  CHECK_THROWS_AS((void)integrate(bad, Z(-4), Z(-2)), NonFinite);
  const Integrand one{[](LogCoord) { return 1.0; }, Density::Z};
  CHECK_THROWS_AS((void)integrate(one, Z(-2), Z(-4)), DomainError);
}
