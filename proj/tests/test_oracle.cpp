#include <random>

#include "doctest.h"
#include "keypoly/oracle.hpp"
#include "support.hpp"

using namespace kt;

namespace {

// 2-adic digits of the root of x^2+x+2 congruent to 0 mod 2, by exhaustive lifting.
Integer hensel_digits_brute(int k) {
  Integer r = 0, mod = 2;
  for (int n = 1; n < k; ++n) {
    Integer next = mod * 2;
    for (Integer cand : {r, Integer(r + mod)}) {
      Integer g = cand * cand + cand + 2;
      if (mpz_divisible_p(g.get_mpz_t(), next.get_mpz_t())) {
        r = cand;
        break;
      }
    }
    mod = next;
  }
  return r;
}

}  // namespace

TEST_CASE("eisenstein root oracle") {
  auto q = FieldSpec::rationals(2);
  EisensteinRootOracle o(P(q, "x^2-2"), 2);
  CHECK(o.evaluate(P(q, "x^2-2")).is_infinite());
  CHECK(o.evaluate(P(q, "x")) == V(1, 2));
  CHECK(o.evaluate(P(q, "x^3+x")) == V(1, 2));
  CHECK(o.evaluate(P(q, "x+2")) == V(1, 2));
  CHECK(o.evaluate(P(q, "x^2+2*x")) == V(1));
  CHECK_THROWS_AS(EisensteinRootOracle(P(q, "x^3-2"), 2), Error);
  CHECK_THROWS_AS(EisensteinRootOracle(P(q, "2*x^2-2"), 2), Error);
}

TEST_CASE("chain oracle") {
  auto q = FieldSpec::rationals(2);
  KeyChain c(q, V(1));
  c.append(P(q, "x^2+2*x+4"), V(7, 2));
  ChainOracle o(c);
  CHECK(o.evaluate(P(q, "6")) == V(1));
  CHECK(o.evaluate(P(q, "x^2+2*x+4")) == V(7, 2));
  CHECK(o.evaluate(P(q, "x")) == V(1));
}

TEST_CASE("self test catches an inconsistent ramification") {
  auto q = FieldSpec::rationals(2);
  EisensteinRootOracle bad(P(q, "x^2-4"), 2);
  auto rep = axioms_selftest(bad, 300, 1);
  CHECK(!rep.passed);
  REQUIRE(rep.witness);
  EisensteinRootOracle good(P(q, "x^2-2"), 2);
  CHECK(axioms_selftest(good, 300, 1).passed);
  KeyChain c(q, V(1, 2));
  c.append(P(q, "x^2-2"), Value::infinity());
  CHECK(axioms_selftest(ChainOracle(c), 300, 1).passed);
  auto f3 = FieldSpec::fp_t(3);
  SeriesOracle s(f3, std::make_shared<ListSource>(f3, std::vector<SeriesTerm>{{V(2, 3), Scalar(3, 1L)}}, Value::infinity()));
  CHECK(axioms_selftest(s, 300, 1).passed);
}

TEST_CASE("backend agreement for sqrt 2") {
  auto q = FieldSpec::rationals(2);
  EisensteinRootOracle e(P(q, "x^2-2"), 2);
  KeyChain c(q, V(1, 2));
  c.append(P(q, "x^2-2"), Value::infinity());
  ChainOracle ch(c);
  std::vector<long> vals = {-1, 0, 1, 2};
  int count = 0;
  for (int deg = 0; deg <= 6; ++deg) {
    long total = 1;
    for (int i = 0; i < deg; ++i) total *= 4;
    for (long code = 0; code < total; ++code) {
      std::vector<FieldElement> cs;
      long k = code;
      for (int i = 0; i < deg; ++i) {
        cs.push_back(FieldElement(q, vals[size_t(k % 4)]));
        k /= 4;
      }
      cs.push_back(FieldElement::one(q));
      Poly f(q, cs);
      if (e.evaluate(f) != ch.evaluate(f)) FAIL_CHECK("disagreement on " << f.str());
      ++count;
    }
  }
  CHECK(count > 5000);
}

TEST_CASE("puiseux series oracle") {
  auto f3 = FieldSpec::fp_t(3);
  SeriesOracle s(f3, std::make_shared<ListSource>(f3, std::vector<SeriesTerm>{{V(2, 3), Scalar(3, 1L)}}, Value::infinity()));
  CHECK(s.evaluate(P(f3, "x^3-t^2")).is_infinite());
  CHECK(s.evaluate(P(f3, "x")) == V(2, 3));
  CHECK(s.evaluate(P(f3, "x - t")) == V(2, 3));
  CHECK(s.evaluate(P(f3, "x^2 + t")) == V(1));
}

TEST_CASE("truncated series certify or raise") {
  auto f2 = FieldSpec::fp_t(2);
  std::vector<SeriesTerm> terms = {{V(1), Scalar(2, 1L)}, {V(3), Scalar(2, 1L)}};
  SeriesOracle s(f2, std::make_shared<ListSource>(f2, terms, V(5)));
  CHECK(s.evaluate(P(f2, "x")) == V(1));
  CHECK(s.evaluate(P(f2, "x - t")) == V(3));
  CHECK_THROWS_AS(s.evaluate(P(f2, "x - t - t^3")), Error);
  try {
    s.evaluate(P(f2, "x - t - t^3"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionExhausted);
    CHECK(e.is_resource());
  }
  // more precision never changes a certified value
  terms.push_back({V(6), Scalar(2, 1L)});
  SeriesOracle s2(f2, std::make_shared<ListSource>(f2, terms, V(9)));
  for (auto txt : {"x", "x - t", "x^2 + t^2", "x^3 - t^3 + x*t"}) CHECK(s.evaluate(P(f2, txt)) == s2.evaluate(P(f2, txt)));
  CHECK(s2.evaluate(P(f2, "x - t - t^3")) == V(6));
}

TEST_CASE("hensel oracle matches exhaustive digit lifting") {
  auto q = FieldSpec::rationals(2);
  auto src = std::make_shared<HenselSource>(P(q, "x^2+x+2"), F(q, "0"));
  SeriesOracle o(q, src, "hensel");
  CHECK(o.evaluate(P(q, "x")) == V(1));
  CHECK(o.evaluate(P(q, "x^2+x+2")).is_infinite());
  CHECK(o.evaluate(P(q, "x^4+x^3+2*x^2")).is_infinite());
  Integer r = hensel_digits_brute(60);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    // a agrees with the root to a random number of digits, then differs
    int n = 1 + int(rng() % 40);
    Integer mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), 2, n + 1);
    Integer a = r % mod;
    mpz_combit(a.get_mpz_t(), n);
    Value expect = V(n);
    CHECK(o.evaluate(P(q, "x - " + a.get_str())) == expect);
  }
  CHECK(axioms_selftest(o, 200, 3).passed);
}

TEST_CASE("sqrt2 convergent source") {
  auto uv = FieldSpec::fp_uv(2);
  auto src = std::make_shared<Sqrt2ConvergentSource>(uv);
  CHECK(src->term_value(0) == Value(Rational(2), Rational(-1)));
  CHECK(src->term_value(1) == Value(Rational(8), Rational(-5)));
  for (int k = 0; k + 1 < 10; ++k) {
    CHECK(src->term_value(k) < src->term_value(k + 1));
    CHECK(src->term_value(k + 1) < V(1));
  }
  SeriesOracle o(uv, src, "series");
  CHECK(o.evaluate(P(uv, "x")) == src->term_value(0));
  Poly s = Poly::constant(src->term(0) + src->term(1));
  CHECK(o.evaluate(Poly::x(uv) + s) == src->term_value(2));
}

TEST_CASE("truncation of field elements") {
  auto q = FieldSpec::rationals(3);
  FieldElement a = F(q, "1/2");
  FieldElement b = truncate_element(a, V(5));
  CHECK(val(a - b) >= V(5));
  CHECK(b.rational().get_den() == 1);
  auto f = FieldSpec::fp_t(5);
  FieldElement c = F(f, "(1+t)/(t - t^2)");
  FieldElement d = truncate_element(c, V(6));
  CHECK(val(c - d) >= V(6));
}
