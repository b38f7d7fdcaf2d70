#include "doctest.h"

#include "dbr/error.hpp"
#include "dbr/serialize.hpp"

using namespace dbr;
using nlohmann::json;

TEST_SUITE("serialize") {

TEST_CASE("Dirichlet round trip") {
  DirichletPolynomial D(20);
  D.set(1, Complex(1.0, -0.5));
  D.set(12, Complex(0.0, 3.25));
  const json j = to_json(D);
  CHECK(j["x"] == 20.0);
  CHECK(j["terms"].size() == 2);
  CHECK(dirichlet_from_json(j).terms() == D.terms());
  CHECK(dump(to_json(dirichlet_from_json(j))) == dump(j));
}

TEST_CASE("polydisc round trip") {
  PolydiscPolynomial P(3);
  P.set(MultiIndex{}, 2.0);
  P.set(MultiIndex::from_dense({1, 0, 2}), Complex(0.1, 0.2));
  const json j = to_json(P);
  CHECK(j["d"] == 3);
  const PolydiscPolynomial back = polydisc_from_json(j);
  CHECK(back.terms() == P.terms());
  CHECK(back.dimension() == 3);
}

TEST_CASE("parse errors name the location") {
  const json bad = json::parse(R"({"x": 10, "terms": [[2, 1.0, 0.0], [3, "a", 0.0]]})");
  try {
    dirichlet_from_json(bad);
    FAIL("expected parse_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("terms[1]") != std::string::npos);
  }
  CHECK_THROWS_AS(dirichlet_from_json(json::parse(R"({"terms": []})")), Error);
  CHECK_THROWS_AS(polydisc_from_json(json::parse(R"({"d": 2, "terms": [[[[3, 1]], 1.0, 0.0]]})")), Error);
  CHECK_THROWS_AS(polydisc_from_json(json::array()), Error);
}

TEST_CASE("bound and report shapes") {
  RadiusBound b;
  b.upper = 0.5;
  b.certified_upper = true;
  b.provenance = {"test"};
  const json j = to_json(b);
  CHECK(j["upper"] == 0.5);
  CHECK(j["certified_upper"] == true);
  CHECK(j["provenance"][0] == "test");

  RatioReport r;
  r.add(10, 0.5);
  r.add(20, 0.75);
  CHECK(to_json(r)["max_ratio"] == 0.75);
  CHECK(to_json(r)["instances"] == 2);
}

}  // TEST_SUITE
