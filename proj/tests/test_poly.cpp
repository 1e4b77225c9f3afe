#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace kt;

TEST_CASE("parser") {
  auto q = FieldSpec::rationals(2);
  CHECK(P(q, "x^2 - 2").coeffs() == std::vector<FieldElement>{F(q, "-2"), F(q, "0"), F(q, "1")});
  CHECK(P(q, "(x+1)^2") == P(q, "x^2+2*x+1"));
  CHECK(P(q, "x/2 + 1/3") == Poly(q, {F(q, "1/3"), F(q, "1/2")}));
  try {
    P(q, "x + y");
    FAIL("expected UnknownSymbol");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownSymbol);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
  try {
    P(q, "x + * 2");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  CHECK_THROWS_AS(P(q, "1/x"), Error);
  CHECK_THROWS_AS(P(q, "t"), Error);
  auto f = FieldSpec::fp_t(3);
  Poly h = P(f, "x^3 - t^2 + (t+1)/t*x");
  CHECK(P(f, h.str()) == h);
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(3);
  for (auto spec : {FieldSpec::rationals(3), FieldSpec::fp_t(2), FieldSpec::q_t(), FieldSpec::fp_uv(2)}) {
    std::vector<std::string> atoms = {"1", "-2", "4/7", "0"};
    if (spec.nvars() == 1) atoms.insert(atoms.end(), {"t", "-t^2+1", "1/(1+t)", "(t^2+1)/t"});
    if (spec.nvars() == 2) atoms.insert(atoms.end(), {"u", "v/u", "u+v", "-u*v^2"});
    for (int k = 0; k < 40; ++k) {
      std::vector<FieldElement> c;
      int d = int(rng() % 5);
      for (int i = 0; i <= d; ++i) c.push_back(F(spec, atoms[rng() % atoms.size()]));
      Poly h(spec, c);
      INFO(h.str());
      CHECK(P(spec, h.str()) == h);
    }
  }
}

TEST_CASE("euclidean division") {
  auto q = FieldSpec::rationals(2);
  Poly qq, r;
  euclid_div(P(q, "x^3+x"), P(q, "x^2-2"), qq, r);
  CHECK(qq == P(q, "x"));
  CHECK(r == P(q, "3*x"));
  euclid_div(P(q, "x^2-2"), P(q, "x^2-2"), qq, r);
  CHECK(qq == P(q, "1"));
  CHECK(r.is_zero());
  euclid_div(P(q, "x+5"), P(q, "x^2-2"), qq, r);
  CHECK(qq.is_zero());
  CHECK(r == P(q, "x+5"));
  CHECK_THROWS_AS(euclid_div(P(q, "x^3"), P(q, "2*x^2"), qq, r), Error);
  std::mt19937_64 rng(9);
  auto f3 = FieldSpec::fp_t(3);
  for (int k = 0; k < 50; ++k) {
    std::vector<FieldElement> a, b;
    for (int i = 0; i < 7; ++i) a.push_back(F(f3, std::to_string(long(rng() % 5)) + "*t^" + std::to_string(rng() % 3)));
    for (int i = 0; i < 3; ++i) b.push_back(F(f3, std::to_string(long(rng() % 5)) + "/(t+1)"));
    b.push_back(F(f3, "1"));
    Poly f(f3, a), g(f3, b);
    euclid_div(f, g, qq, r);
    CHECK(qq * g + r == f);
    CHECK(r.degree() < g.degree());
  }
}

TEST_CASE("hasse derivatives") {
  auto q = FieldSpec::rationals(2);
  CHECK(hasse_derivative(P(q, "x^5"), 2) == P(q, "10*x^3"));
  CHECK(hasse_derivative(P(q, "x^5"), 0) == P(q, "x^5"));
  auto f2 = FieldSpec::fp_t(2);
  CHECK(hasse_derivative(P(f2, "x^2"), 1).is_zero());
  CHECK(hasse_derivative(P(f2, "x^2"), 2) == P(f2, "1"));
  std::mt19937_64 rng(1);
  for (auto spec : {FieldSpec::rationals(2), FieldSpec::fp_t(2), FieldSpec::fp_t(3)}) {
    for (int k = 0; k < 20; ++k) {
      std::vector<FieldElement> a, b;
      for (int i = 0; i < 6; ++i) a.push_back(FieldElement(spec, long(rng() % 7) - 3));
      for (int i = 0; i < 5; ++i) b.push_back(FieldElement(spec, long(rng() % 7) - 3));
      Poly f(spec, a), g(spec, b);
      for (int x = 0; x <= 4; ++x)
        for (int y = 0; y <= 4; ++y) {
          Poly lhs = hasse_derivative(hasse_derivative(f, y), x);
          Poly rhs = hasse_derivative(f, x + y) * FieldElement(spec, Rational(binomial(x + y, x)));
          CHECK(lhs == rhs);
        }
      for (int bb = 0; bb <= 6; ++bb) {
        Poly sum(spec);
        for (int a2 = 0; a2 <= bb; ++a2) sum += hasse_derivative(f, a2) * hasse_derivative(g, bb - a2);
        CHECK(hasse_derivative(f * g, bb) == sum);
      }
    }
  }
}

TEST_CASE("evaluation") {
  auto q = FieldSpec::rationals(2);
  CHECK(evaluate(P(q, "x^2-2"), F(q, "3")) == F(q, "7"));
  CHECK(evaluate(P(q, "x"), F(q, "5/7")) == F(q, "5/7"));
  CHECK(evaluate_mod(P(q, "x^2-2"), P(q, "x^2-2")).is_zero());
  CHECK(evaluate_mod(P(q, "x^3"), P(q, "x^2-2")) == P(q, "2*x"));
}
