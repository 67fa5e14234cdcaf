#include <cmath>
#include <numbers>

#include "doctest.h"
#include "germflow/errors.hpp"
#include "germflow/quadrature.hpp"
#include "germflow/timemap.hpp"

using namespace germflow;

namespace {

const double e = std::numbers::e;

LogCoord Z(double z) { return LogCoord::from_z(z); }

// tau for Xalpha with lambda = -1: -(z - z_b) - alpha ln(L / L_b).
double xalpha_tau(double alpha, double zb, double z) {
  return -(z - zb) - alpha * std::log(z / zb);
}

}  // namespace

TEST_CASE("linear time map") {
  const TimeMapCache tm(FieldSpec::linear());
  CHECK(tau(tm, Z(-5)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tau(tm, Z(-3)) == 0.0);
  CHECK(tau_inv(tm, 2.0).z() == doctest::Approx(-5.0).epsilon(1e-14));
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK(flow(tm, t, Z(-7)).z() == doctest::Approx(-7.0 - t).epsilon(1e-14));
    CHECK(flow_derivative(tm, t, Z(-7)) == doctest::Approx(std::exp(-t)).epsilon(1e-13));
  }
  const TimeMapCache tm2(FieldSpec::linear(-2.0));
  CHECK(tau(tm2, Z(-5)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("xalpha time map against its antiderivative") {
  const FieldSpec f = FieldSpec::make(Family::Xalpha, 1.0, -1.0, std::exp(-3.0));
  const TimeMapCache tm(f);
  const double oracle = e * e - 3 - 2 + std::log(3.0);
  CHECK(tau(tm, Z(-e * e)) == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(tau_inv(tm, oracle).z() == doctest::Approx(-e * e).epsilon(1e-8));
  for (double w : {1.2, 2.0, 5.0, 11.0, 30.0, 49.0}) {
    const LogCoord p = LogCoord::from_w(w);
    const double t = xalpha_tau(1.0, -3.0, p.z());
    CHECK(tau(tm, p) == doctest::Approx(t).epsilon(1e-10));
  }
}

TEST_CASE("round trip and flow identities") {
  for (const FieldSpec& f :
       {FieldSpec::make(Family::Xalpha, 2.0), FieldSpec::make(Family::XtildeAlpha, 1.0),
        field_from_s(SGenSpec(1.0)), FieldSpec::perturb_b(FieldSpec::linear(-0.5), 1.0)}) {
    CAPTURE(f.to_string());
    const TimeMapCache tm(f);
    for (LogCoord p : audit_grid(f, 100, 30)) {
      CHECK(std::abs(tau_inv(tm, tau(tm, p)).z() - p.z()) <= 1e-9 * (1 + std::abs(p.z())));
    }
    const LogCoord x = LogCoord::from_w(f.delta_coord().w() + 2.0);
    const double ts[] = {-1.0, 0.3, 1.0, 2.0};
    for (double s : ts) {
      for (double t : ts) {
        const double lhs = flow(tm, s, flow(tm, t, x)).z();
        const double rhs = flow(tm, s + t, x).z();
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
        const double cocycle = flow_derivative(tm, s, flow(tm, t, x)) * flow_derivative(tm, t, x);
        CHECK(flow_derivative(tm, s + t, x) == doctest::Approx(cocycle).epsilon(1e-7));
      }
      CHECK(tau(tm, flow(tm, s, x)) - tau(tm, x) == doctest::Approx(s).epsilon(1e-8).scale(1));
    }
    CHECK(flow(tm, 0.0, x).z() == x.z());
    for (LogCoord p : audit_grid(f, 20, 20)) CHECK(flow(tm, 1.5, p) < p);
  }
}

TEST_CASE("flow derivative against finite differences") {
  const FieldSpec f = FieldSpec::make(Family::XtildeAlpha, 1.0);
  const TimeMapCache tm(f);
  for (double z : {-6.0, -15.0, -60.0}) {
    const double h = 1e-6;
    const double dz = (flow(tm, 1.0, Z(z + h)).z() - flow(tm, 1.0, Z(z - h)).z()) / (2 * h);
    const LogCoord y = flow(tm, 1.0, Z(z));
    const double fd = std::exp(y.z() - z) * dz;
    CHECK(flow_derivative(tm, 1.0, Z(z)) == doctest::Approx(fd).epsilon(1e-6));
  }
  const TimeMapCache tm2(FieldSpec::make(Family::Xalpha, 2.0));
  CHECK(flow_derivative(tm2, 1.0, Z(-1000)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("flow time by independent quadrature") {
  const FieldSpec f = FieldSpec::make(Family::Xalpha, 1.0);
  const TimeMapCache tm(f);
  const LogCoord x = Z(-5);
  const LogCoord y = flow(tm, 1.0, x);
  const Integrand dt{[&](LogCoord p) { return 1.0 / eval_ratio(f, p); }, Density::Z};
  CHECK(-integrate(dt, y, x, {1e-12}).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hermite table against direct quadrature") {
  for (const FieldSpec& f : {FieldSpec::make(Family::XtildeAlpha, 1.0), field_from_s(SGenSpec(1.0)),
                             FieldSpec::make(Family::XbarbarAlpha, 0.7)}) {
    CAPTURE(f.to_string());
    const TimeMapCache tm(f);
    const Integrand dev{[&](LogCoord p) { return evaluate(f, p).deviation; }, Density::Z};
    for (double w : {1.7, 3.14, 8.9, 21.3, 44.4}) {
      if (w <= f.delta_coord().w()) continue;
      const LogCoord p = LogCoord::from_w(w);
      const double direct = (p.z() - f.delta_coord().z()) / f.lambda() -
                            integrate(dev, p, f.delta_coord(), {1e-13}).value;
      CHECK(std::abs(tau(tm, p) - direct) <= 1e-9 * (1 + std::abs(direct)));
    }
  }
}

TEST_CASE("ranges") {
  const TimeMapCache tm(FieldSpec::make(Family::Xalpha, 1.0));
  CHECK_THROWS_AS((void)flow(tm, -10.0, Z(-5)), RangeExceeded);
  CHECK_THROWS_AS((void)tau_inv(tm, -0.5), RangeExceeded);
  CHECK_THROWS_AS((void)tau(tm, LogCoord::from_w(60.0)), RangeExceeded);
  CHECK_THROWS_AS((void)tau(tm, Z(-1)), DomainError);
}
