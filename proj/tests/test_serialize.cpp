#include "doctest.h"

#include "plectic/problem_checks.hpp"
#include "plectic/serialize.hpp"

using namespace plectic;

namespace {

const Chart R3(3);
QVec v3(int a, int b, int c) { return {Q(a), Q(b), Q(c)}; }
Plectic vol3() { return make_plectic(R3, 2, volume_form(R3)); }

json minimal() { return json::parse(R"({"schema": 1, "plectic": {"dim": 3, "omega": "volume"}})"); }

std::string pointer_of(const json& j) {
  try {
    problem_from(j);
  } catch (const InputError& e) {
    return e.pointer();
  }
  return "<no error>";
}

} // namespace

TEST_CASE("rationals") {
  CHECK(rational_from(json("3/6"), "") == Q(1, 2));
  CHECK(rational_from(json(-4), "") == -4);
  CHECK(rational_from(json("-2/3"), "") == Q(-2, 3));
  CHECK_THROWS_AS(rational_from(json(" -2/3 "), ""), InputError);
  CHECK(to_json(Q(-7, 3)) == json("-7/3"));
  try {
    rational_from(json("3/"), "/x/0");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.pointer() == "/x/0");
  }
  CHECK_THROWS_AS(rational_from(json(1.5), "/y"), InputError);
  CHECK_THROWS_AS(rational_from(json("1/0"), "/z"), InputError);
}

TEST_CASE("forms and multivectors round trip") {
  Poly p = Poly::coord(3, 1) * Poly::coord(3, 2) * Q(3, 4) + Poly::constant(3, -2);
  Form a = Form::basis(R3, {1, 3}, p) + Form::basis(R3, {2, 3}, Poly::coord(3, 3));
  CHECK(form_from(to_json(a), R3, "") == a);
  MultiVec v = MultiVec::basis(R3, {2}, p) - MultiVec::basis(R3, {1}, Poly::constant(3, 1));
  CHECK(multivec_from(to_json(v), R3, "") == v);
  CHECK(form_from(to_json(Form::zero(R3, 2)), R3, "") == Form::zero(R3, 2));

  json bad = to_json(a);
  bad["terms"][0]["idx"] = {1, 1};
  CHECK_THROWS_AS(form_from(bad, R3, "/f"), InputError);
  bad["terms"][0]["idx"] = {1, 4};
  try {
    form_from(bad, R3, "/f");
  } catch (const InputError& e) {
    CHECK(e.pointer() == "/f/terms/0/idx/1");
  }
}

TEST_CASE("observables round trip") {
  Plectic P = vol3();
  for (const auto& x : {make_obs(P, AffSimplex{{v3(0, 0, 0), v3(1, 0, 0)}}, {v3(0, 0, -2)}),
                        make_obs(P, AffSimplex{{v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0)}}, {}),
                        make_obs(P, AffSimplex{{v3(1, 2, 3)}}, {v3(0, 1, 0), v3(1, 0, 0)})}) {
    ObsSimplex y = obs_from(to_json(x), P, "");
    CHECK(y == x);
    CHECK(y.alpha == x.alpha);
  }
}

TEST_CASE("states") {
  auto s = state_from(json::parse(R"({"level": 0, "phases": [{"idx": 3, "r": "1/4"}, {"idx": 1, "r": 0,
                                      "residual": "1/2"}]})"),
                      "/s");
  CHECK(s.level == 0);
  CHECK(s.values.at(3).turns == Q(1, 4));
  CHECK(s.values.at(1).residual == Q(1, 2));
  try {
    state_from(json::parse(R"({"level": 0, "phases": [{"idx": 3, "r": "1/4"}, {"idx": 3, "r": "0"}]})"), "/s");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.pointer() == "/s/phases/1/idx");
  }
}

TEST_CASE("schema errors carry pointers") {
  json j = minimal();
  CHECK_NOTHROW(problem_from(j));
  json no_schema = j;
  no_schema.erase("schema");
  CHECK(pointer_of(no_schema) == "/schema");
  json v2 = j;
  v2["schema"] = 2;
  CHECK(pointer_of(v2) == "/schema");
  json dim = j;
  dim["plectic"]["dim"] = "three";
  CHECK(pointer_of(dim) == "/plectic/dim");

  json fam = j;
  fam["hamiltonians"] = json::parse(R"([{"name": "a", "ham": {"degree": 1, "terms": [{"idx": [1],
                                          "poly": [{"exp": [0, 0, 0], "coef": "1"}]}]}}])");
  fam["families"] = json::parse(R"([["a", "b"]])");
  CHECK(pointer_of(fam) == "/families/0/1");

  json seeds = j;
  seeds["complexes"] = json::parse(R"([{"seeds": [0]}])");
  CHECK(pointer_of(seeds) == "/complexes/0/seeds/0");

  json sign = j;
  sign["sign_variant"] = "other";
  CHECK(pointer_of(sign) == "/sign_variant");

  json rational = j;
  rational["integrals"] = json::parse(R"([{"form": {"degree": 0, "terms": [{"idx": [],
      "poly": [{"exp": [0, 0, 0], "coef": "3/"}]}]}, "vertices": [[0, 0, 0]]}])");
  CHECK(pointer_of(rational) == "/integrals/0/form/terms/0/poly/0/coef");

  json ham = j;
  ham["hamiltonians"] = json::parse(R"([{"name": "x", "ham": {"degree": 1, "terms": [{"idx": [1],
                                          "poly": [{"exp": [1, 0, 0], "coef": "1"}]}]}}])");
  CHECK(pointer_of(ham) == "/hamiltonians/0");
}

TEST_CASE("bundled problem files") {
  Problem q = load_problem(std::string(PLECTIC_DATA_DIR) + "/q3.json");
  CHECK(q.plectic.n == 2);
  CHECK(q.sign == BracketSign::Standard);
  CHECK(q.hamiltonians.size() == 9);
  CHECK(q.complexes.size() == 4);
  REQUIRE(q.integrals.size() >= 1);
  CHECK(integrate(q.integrals[0].first, q.integrals[0].second) == Q(1, 24));
  for (const auto& r : check_problem(q))
    CHECK_MESSAGE(r.ok(), r.name, " ", r.witness);

  Problem neg = load_problem(std::string(PLECTIC_DATA_DIR) + "/negative_jacobi.json");
  CHECK(neg.sign == BracketSign::ShiftedIndex);
  CHECK(check_negative_control(neg, 3).ok());

  try {
    load_problem(std::string(PLECTIC_DATA_DIR) + "/malformed_rational.json");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.pointer() == "/integrals/0/form/terms/0/poly/0/coef");
  }
  CHECK_THROWS_AS(load_problem("/nonexistent/file.json"), InputError);
}
