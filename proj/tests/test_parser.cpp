#include <cmath>

#include "doctest.h"
#include "germflow/errors.hpp"
#include "germflow/field_parser.hpp"

using namespace germflow;

TEST_CASE("field spec strings") {
  const FieldSpec f = parse_field_spec("family:xalpha,alpha=0.5");
  CHECK(f.family() == Family::Xalpha);
  CHECK(f.alpha() == 0.5);
  CHECK(f.lambda() == -1.0);
  CHECK(f.delta() == doctest::Approx(std::exp(-3.0)));

  const FieldSpec g = parse_field_spec(" family:xtildealpha , delta=0.01, lambda=-2,alpha=1 ");
  CHECK(g.lambda() == -2.0);
  CHECK(g.delta() == doctest::Approx(0.01));

  const FieldSpec p = parse_field_spec("family:perturba,alpha=1,base=(family:linear,lambda=-2)");
  REQUIRE(p.base() != nullptr);
  CHECK(p.base()->lambda() == -2.0);
  CHECK(p.lambda() == -2.0);
}

TEST_CASE("to_string round trips") {
  for (const char* text : {"family:linear,lambda=-3", "family:sgen,alpha=-0.25",
                           "family:perturbb,alpha=0.5,base=(family:xtildealpha,alpha=1)",
                           "family:xbarbaralpha,alpha=0.3,lambda=-0.5"}) {
    const FieldSpec a = parse_field_spec(text);
    const FieldSpec b = parse_field_spec(a.to_string());
    CHECK(a.to_string() == b.to_string());
    CHECK(a.delta_coord().z() == b.delta_coord().z());
  }
}

TEST_CASE("rejected specs") {
  for (const char* text : {"xalpha,alpha=1", "family:nope", "family:xalpha,alpha=1,gamma=2",
                           "family:xalpha,alpha=1,alpha=2", "family:xalpha,alpha=abc",
                           "family:xalpha,base=(family:linear)", "family:perturba,base=(family:linear",
                           "family:linear,alpha=1", "family:sgen,lambda=-2", "family:xalpha,alpha"}) {
    CAPTURE(text);
    CHECK_THROWS_AS((void)parse_field_spec(text), ParseError);
  }
}

TEST_CASE("points") {
  CHECK(parse_point("0.01").z() == doctest::Approx(std::log(0.01)));
  CHECK(parse_point("x=0.5").z() == doctest::Approx(std::log(0.5)));
  CHECK(parse_point("z=-7").z() == -7.0);
  CHECK(parse_point("w=2").w() == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)parse_point("1.5"), DomainError);
  CHECK_THROWS_AS((void)parse_point("z=1"), DomainError);
  CHECK_THROWS_AS((void)parse_point("q=1"), ParseError);
}
