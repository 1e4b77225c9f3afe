#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "keypoly/json_io.hpp"
#include "support.hpp"

using namespace kt;

TEST_CASE("rational and value encodings") {
  CHECK(rational_from_json(rational_json(Rational(-7, 3))) == Rational(-7, 3));
  Rational big(Integer("123456789012345678901234567891"), Integer(7));
  big.canonicalize();
  Json jb = rational_json(big);
  CHECK(jb["num"].is_string());
  CHECK(rational_from_json(jb) == big);
  CHECK(rational_from_json(Json("5/10")) == Rational(1, 2));
  CHECK(to_json(Value::infinity(), ValueMode::Rational) == "inf");
  CHECK(value_from_json(Json("inf")).is_infinite());
  Value q(Rational(3), Rational(-2));
  Json jq = to_json(q, ValueMode::Quadratic);
  CHECK(jq["mode"] == "quadratic");
  CHECK(value_from_json(jq) == q);
  CHECK(value_from_json(to_json(V(5, 4), ValueMode::Rational)) == V(5, 4));
  CHECK_THROWS_AS(rational_from_json(Json::array()), Error);
}

TEST_CASE("field specs round trip") {
  for (auto s : {FieldSpec::rationals(5), FieldSpec::fp_t(3), FieldSpec::q_t(), FieldSpec::fp_uv(2)}) {
    FieldSpec back = field_from_json(to_json(s));
    CHECK(back.kind == s.kind);
    CHECK(back.describe() == s.describe());
  }
  CHECK_THROWS_AS(field_from_json(Json{{"base", "R"}, {"p", 2}}), Error);
}

TEST_CASE("polynomials round trip") {
  std::mt19937_64 rng(3);
  for (auto s : {FieldSpec::rationals(3), FieldSpec::fp_t(2), FieldSpec::q_t(), FieldSpec::fp_uv(2)}) {
    for (int k = 0; k < 10; ++k) {
      Poly f = fixtures::random_poly(s, rng, 1 + int(rng() % 5));
      CHECK(poly_from_json(s, to_json(f)) == f);
      CHECK(poly_from_json(s, Json(f.str())) == f);
    }
  }
}

TEST_CASE("chains round trip with bounds") {
  std::mt19937_64 rng(11);
  for (auto s : {FieldSpec::rationals(2), FieldSpec::fp_t(3), FieldSpec::q_t()}) {
    for (int k = 0; k < 4; ++k) {
      KeyChain c = fixtures::random_chain(s, rng, 3);
      Json j = to_json(c);
      KeyChain back = chain_from_json(j);
      REQUIRE(back.length() == c.length());
      for (int i = 1; i <= c.length(); ++i) {
        CHECK(back.level(i).Q == c.level(i).Q);
        CHECK(back.level(i).beta == c.level(i).beta);
        CHECK(back.level(i).alpha == c.level(i).alpha);
      }
      CHECK(j["chain"][0]["b"] == 1);
      CHECK(dump(to_json(back)) == dump(j));
    }
  }
}

TEST_CASE("chain documents are validated") {
  auto q = FieldSpec::rationals(2);
  Json bad_first = {{"field", to_json(q)}, {"chain", {{{"Q", "x+1"}, {"beta", 1}}}}};
  CHECK_THROWS_AS(chain_from_json(bad_first), Error);
  Json not_key = {{"field", to_json(q)}, {"chain", {{{"Q", "x"}, {"beta", 1}}, {{"Q", "x^2+2"}, {"beta", 3}}}}};
  CHECK_THROWS_AS(chain_from_json(not_key), Error);
  Json no_field = {{"chain", {{{"Q", "x"}, {"beta", 1}}}}};
  CHECK_THROWS_AS(chain_from_json(no_field), Error);
}

TEST_CASE("run results serialize deterministically") {
  auto o = fixtures::sqrt2_oracle();
  auto q = o->field();
  Budgets b;
  b.max_steps = 6;
  auto r1 = run(*o, {P(q, "x^2-2")}, b);
  auto r2 = run(*o, {P(q, "x^2-2")}, b);
  std::string a = dump(to_json(r1)), c = dump(to_json(r2));
  CHECK(a == c);
  Json j = Json::parse(a);
  CHECK(j["status"] == status_name(r1.status));
  CHECK(j["steps"].size() == r1.trace.size());
  KeyChain back = chain_from_json(j["chain"]);
  CHECK(back.length() == r1.chain.length());
}

TEST_CASE("oracle specs") {
  Json hensel = {{"kind", "hensel"}, {"field", {{"base", "Q"}, {"p", 2}}}, {"min_poly", "x^2+x+2"}, {"start", "0"}, {"max_steps", 12}};
  auto o = oracle_from_json(hensel);
  auto q = o->field();
  CHECK(o->evaluate(P(q, "x^2+x+2")) >= V(8));
  CHECK(o->evaluate(P(q, "x")) == V(1));

  Json series = {{"kind", "series"},
                 {"field", {{"base", "Fp_t"}, {"p", 3}}},
                 {"terms", {{{"exp", "1/2"}, {"coeff", 1}}, {{"exp", 1}, {"coeff", 2}}}},
                 {"frontier", "inf"}};
  auto s = oracle_from_json(series);
  CHECK(s->evaluate(P(s->field(), "x")) == V(1, 2));

  Json conv = {{"kind", "series"}, {"field", {{"base", "Fp_uv"}, {"p", 2}}}, {"generator", "sqrt2_convergents"}, {"max_terms", 6}};
  auto cv = oracle_from_json(conv);
  CHECK(cv->evaluate(P(cv->field(), "x")) == Value(Rational(2), Rational(-1)));

  Json scripted = {{"kind", "scripted"}, {"inner", conv}, {"limit", "x^2+u*x+u^2"}, {"value", 3}};
  auto sc = oracle_from_json(scripted);
  CHECK(sc->evaluate(P(sc->field(), "x^2+u*x+u^2")) == V(3));

  Json eis = {{"kind", "eisenstein"}, {"field", {{"base", "Q"}, {"p", 3}}}, {"min_poly", "x^2-3"}, {"e", 2}};
  auto ei = oracle_from_json(eis);
  CHECK(ei->evaluate(P(ei->field(), "x")) == V(1, 2));

  KeyChain c(FieldSpec::rationals(2), V(1, 2));
  Json ch = {{"kind", "chain"}, {"chain", to_json(c)}};
  auto co = oracle_from_json(ch);
  CHECK(co->evaluate(P(co->field(), "x^2")) == V(1));

  CHECK_THROWS_AS(oracle_from_json(Json{{"kind", "mystery"}}), Error);
  CHECK_THROWS_AS(oracle_from_json(Json{{"kind", "series"}, {"field", {{"base", "Q"}, {"p", 2}}}, {"generator", "sqrt2_convergents"}}), Error);
}

TEST_CASE("budgets") {
  Budgets b = budgets_from_json(Json{{"max_steps", 7}, {"stall_window", 3}, {"value_threshold", "5/2"}, {"seed", 9}});
  CHECK(b.max_steps == 7);
  CHECK(b.stall_window == 3);
  CHECK(b.value_threshold == V(5, 2));
  CHECK(b.seed == 9);
  Budgets d = budgets_from_json(Json(nullptr));
  CHECK(d.max_steps == Budgets{}.max_steps);
}

TEST_CASE("limit candidate document") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  auto q = o->field();
  auto lr = build_limit_candidate(res.chain, *o, {o->limit()});
  Json j = to_json(lr, q.mode());
  CHECK(j["base_level"] == lr.candidate.base_level);
  CHECK(j["coeffs"].contains("2"));
  CHECK(j["checks"]["weakly_affine"] == true);
  CHECK(j["checks"]["critical_line"] == true);
  CHECK(j["checks"]["exponent_divisibility"] == false);
}
