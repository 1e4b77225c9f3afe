#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "support.hpp"

using namespace kt;

TEST_CASE("defect detection") {
  auto q = FieldSpec::rationals(2);
  auto o = fixtures::sqrt2_oracle();
  KeyChain c(q, V(1, 2));
  auto d = detect_defect(P(q, "x^2-2"), c, *o);
  REQUIRE(d);
  CHECK(d->level == 1);
  CHECK(d->truncated == V(1));
  CHECK(d->target.is_infinite());
  CHECK(!detect_defect(P(q, "x"), c, *o));
  CHECK(!detect_defect(P(q, "2"), c, *o));
}

TEST_CASE("augmentation for sqrt 2") {
  auto q = FieldSpec::rationals(2);
  auto o = fixtures::sqrt2_oracle();
  KeyChain c(q, o->evaluate(P(q, "x")));
  auto rep = augment_step(c, *o, P(q, "x^2-2"), 0);
  CHECK(rep.Q == P(q, "x^2-2"));
  CHECK(rep.alpha == 2);
  CHECK(rep.abar == 2);
  CHECK(rep.d == 1);
  CHECK(rep.beta.is_infinite());
  CHECK(rep.factor_str == "Z + 1");
  CHECK(rep.passing_factors == 1);
  auto res = run(*o, {P(q, "x^2-2"), P(q, "x^3+x"), P(q, "x+1")}, Budgets{});
  CHECK(res.status == RunStatus::Complete);
  REQUIRE(res.chain.length() == 2);
  CHECK(res.chain.level(1).beta == V(1, 2));
  CHECK(res.chain.level(2).Q == P(q, "x^2-2"));
  CHECK(res.trace.size() == 1);
}

TEST_CASE("augmentation for a cube root of t^2") {
  auto f = FieldSpec::fp_t(3);
  auto o = fixtures::puiseux_oracle();
  KeyChain c(f, o->evaluate(P(f, "x")));
  CHECK(c.level(1).beta == V(2, 3));
  auto rep = augment_step(c, *o, P(f, "x^3-t^2"), 0);
  CHECK(rep.Q == P(f, "x^3-t^2"));
  CHECK(rep.alpha == 3);
  CHECK(rep.beta.is_infinite());
}

TEST_CASE("alpha one branch for the 2-adic root") {
  auto q = FieldSpec::rationals(2);
  auto o = fixtures::hensel_oracle();
  KeyChain c(q, o->evaluate(P(q, "x")));
  CHECK(c.level(1).beta == V(1));
  CHECK(support_set(c, P(q, "x^2+x+2"), 1, V(1)) == std::vector<int>{0, 1});
  auto rep = augment_step(c, *o, P(q, "x^2+x+2"), 0);
  CHECK(rep.alpha == 1);
  CHECK(rep.residual_str == "Z + 1");
  Budgets b;
  b.max_steps = 12;
  auto res = run(*o, {P(q, "x^2+x+2")}, b);
  CHECK(res.status == RunStatus::BudgetExhausted);
  REQUIRE(res.tails.size() >= 1);
  CHECK(res.tails[0].kind == AlphaOneCase::Case2a);
  for (int i = 2; i <= res.chain.length(); ++i) {
    CHECK(res.chain.level(i).alpha == 1);
    CHECK(res.chain.level(i).beta > res.chain.level(i - 1).beta);
  }
}

TEST_CASE("exact root reaches an infinite value") {
  auto q = FieldSpec::rationals(2);
  auto o = std::make_shared<SeriesOracle>(q, std::make_shared<ListSource>(q, std::vector<SeriesTerm>{{V(1), Scalar(2, 1L)}}, Value::infinity()));
  auto res = run(*o, {P(q, "x-2"), P(q, "x^2+1")}, Budgets{});
  CHECK(res.status == RunStatus::Complete);
  CHECK(res.infinite_top);
  CHECK(res.chain.level(2).Q == P(q, "x-2"));
}

TEST_CASE("non-positive value of x") {
  auto q = FieldSpec::rationals(2);
  EisensteinRootOracle o(P(q, "x - 1"), 1);
  try {
    run(o, {P(q, "x")}, Budgets{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveValueOfX);
  }
}

TEST_CASE("chain oracle round trip") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (auto spec : {FieldSpec::rationals(2), FieldSpec::rationals(3), FieldSpec::fp_t(2), FieldSpec::q_t()}) {
    for (int k = 0; k < 6; ++k) {
      KeyChain c = fixtures::random_chain(spec, rng, 2 + int(rng() % 3));
      std::vector<Poly> probes;
      for (int i = 2; i <= c.length(); ++i) probes.push_back(c.level(i).Q);
      ChainOracle o(c);
      auto res = run(o, probes, Budgets{});
      CHECK(res.status == RunStatus::Complete);
      REQUIRE(res.chain.length() == c.length());
      for (int i = 1; i <= c.length(); ++i) {
        CHECK(res.chain.level(i).beta == c.level(i).beta);
        CHECK(res.chain.level(i).alpha == c.level(i).alpha);
      }
      ++checked;
    }
  }
  CHECK(checked == 24);
}

TEST_CASE("value threshold stops a discrete alpha one tail") {
  auto q = FieldSpec::rationals(2);
  auto o = fixtures::hensel_oracle();
  Budgets b;
  b.max_steps = 40;
  b.value_threshold = V(20);
  auto res = run(*o, {P(q, "x^2+x+2")}, b);
  CHECK(res.status == RunStatus::BudgetExhausted);
  CHECK(res.chain.top().beta > V(20));
  CHECK(res.chain.level(res.chain.length() - 1).beta <= V(20));
  CHECK(res.stop_reason.find("threshold") != std::string::npos);
}
