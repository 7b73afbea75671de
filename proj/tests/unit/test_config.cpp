#include "doctest.h"
#include "tcr/config.hpp"

using namespace tcr;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "fixture": "t",
    "field": "Q",
    "curve": {"a3": "1", "a4": "-1"},
    "points": {"alpha": {"x": "0", "y": "0"}, "p": {"multiple": 2}, "r": {"multiple": 1, "base": "p", "plus": "alpha"}},
    "ample": "3*Oinf",
    "grid_base": "p",
    "windows": {"max_degree": 4}
  })");
}

std::size_t error_position(const Fixture& fx, const std::string& text) {
  try {
    fx.parse_divisor(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("fixture points and windows") {
  const Fixture fx = Fixture::from_json(base_config());
  const Curve& c = fx.curve();
  CHECK(fx.name() == "t");
  CHECK(fx.point("p") == c.mul(2, fx.translation().alpha()));
  CHECK(fx.point("r") == c.mul(3, fx.translation().alpha()));
  CHECK(fx.m() == Divisor::point(Point::infinity(), 3));
  CHECK(fx.windows().max_degree == 4);
  CHECK(fx.windows().cp_window == 12);
  CHECK_THROWS(fx.point("nope"));
}

TEST_CASE("divisor grammar") {
  const Fixture fx = Fixture::from_json(base_config());
  const Translation& tr = fx.translation();
  const Point p = fx.point("p");
  CHECK(fx.parse_divisor("2*p@0 + p@-1 - alpha") ==
        Divisor::point(p, 2) + Divisor::point(tr.tau_pow(p, -1)) - Divisor::point(tr.alpha()));
  CHECK(fx.parse_divisor("(1,0) + Oinf") == Divisor::point(p) + Divisor::point(Point::infinity()));
  CHECK(fx.parse_divisor("  ").is_zero());
  CHECK(fx.parse_divisor("0").is_zero());
  CHECK(fx.parse_divisor("p@+2") == Divisor::point(tr.tau_pow(p, 2)));
  CHECK(error_position(fx, "p + 2 q") == 6);
  CHECK(error_position(fx, "p + zz") == 4);
  CHECK(error_position(fx, "p p") == 2);
  CHECK(error_position(fx, "(1,1)") == 0);  // not on the curve
  CHECK(error_position(fx, "p@") == 2);
}

TEST_CASE("layering grammar") {
  const Fixture fx = Fixture::from_json(base_config());
  const Translation& tr = fx.translation();
  const Point p = fx.point("p");
  const Layering r = fx.parse_layering("p@0 + p@-1; p@-1");
  CHECK(r.side == Side::right);
  CHECK(r == layering_M(tr, 2, Divisor::point(p)));
  const Layering l = fx.parse_layering("left: p; p@1");
  CHECK(l.side == Side::left);
  CHECK(l.size() == 2);
  CHECK_THROWS_AS(fx.parse_layering("p; p@1"), AllowabilityError);
  CHECK_THROWS_AS(fx.parse_layering("up: p"), ParseError);
  try {
    fx.parse_layering("p; p@-1 + zz");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
  }
}

TEST_CASE("config validation") {
  json j = base_config();
  j["curve"] = {{"a4", "0"}, {"a6", "0"}};
  CHECK_THROWS_WITH(Fixture::from_json(j), doctest::Contains("singular"));
  j = base_config();
  j["points"]["alpha"] = {{"x", "1"}, {"y", "1"}};
  CHECK_THROWS(Fixture::from_json(j));
  j = base_config();
  j["points"]["s"] = {{"multiple", 1}, {"base", "t"}};
  j["points"]["t"] = {{"multiple", 1}, {"base", "s"}};
  CHECK_THROWS_WITH(Fixture::from_json(j), doctest::Contains("unresolvable"));
  j = base_config();
  j["ample"] = "Oinf";
  CHECK_THROWS_WITH(Fixture::from_json(j), doctest::Contains("ample"));
  j = base_config();
  j["field"] = "Fp:10";
  CHECK_THROWS(Fixture::from_json(j));
}

TEST_CASE("shipped fixtures") {
  for (const std::string name : {"q-mu3", "q-mu9", "fp-mu3"}) {
    const Fixture fx = Fixture::load(std::string(TCR_FIXTURE_DIR) + "/" + name + ".json");
    CHECK(fx.name() == name);
    CHECK(fx.curve().contains(fx.point("p")));
    CHECK(fx.curve().contains(fx.beta()));
  }
  const Fixture fp = Fixture::load(std::string(TCR_FIXTURE_DIR) + "/fp-mu3.json");
  CHECK(fp.translation().order() == 1657);
  // <alpha> is the 1657-torsion, so q and beta lie off the orbit of alpha
  CHECK(fp.curve().mul(1657, fp.point("p")) == Point::infinity());
  CHECK(fp.curve().mul(1657, fp.point("q")) != Point::infinity());
  CHECK(fp.curve().mul(1657, fp.point("beta")) != Point::infinity());
}
