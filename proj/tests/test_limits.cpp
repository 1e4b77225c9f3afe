#include "doctest.h"
#include "fixtures.hpp"
#include "keypoly/limits.hpp"
#include "support.hpp"

using namespace kt;

namespace {

// u^a v^b, of value a + b*sqrt(2)
FieldElement uv_mono(const FieldSpec& s, long a, long b) { return FieldElement::monomial(s, Value(Rational(a), Rational(b))); }

struct Crafted {
  int j;
  long a, b;
  bool bad;
  bool below, not_power, above;
  bool removable;
};

std::string failed(const std::vector<Check>& checks) {
  std::string out;
  for (const auto& c : checks)
    if (c.applicable && !c.passed) out += c.name + " (" + c.detail + ") ";
  return out;
}

}  // namespace

TEST_CASE("stall fixture runs into a bounded alpha one tail") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  CHECK(res.status == RunStatus::StallDetected);
  REQUIRE(res.chain.length() >= 6);
  auto tr = stall_trace(res.chain, o->limit(), o->declared_bound());
  CHECK(tr.base == 1);
  CHECK(tr.z.size() == size_t(res.chain.length() - 1));
  for (const auto& s : tr.steps) CHECK(s.delta == 2);
  CHECK(failed(tr.checks) == "");
  auto sd = stable_delta(tr, 6);
  CHECK(sd.delta == 2);
  CHECK(sd.e == 1);
  CHECK(!sd.violation);
}

TEST_CASE("stable delta in characteristic three") {
  auto s = FieldSpec::fp_uv(3);
  Sqrt2ConvergentSource src(s, 8);
  KeyChain c(s, src.term_value(0));
  FieldElement theta = FieldElement::zero(s);
  for (int k = 0; k < 5; ++k) {
    theta += src.term(k);
    c.append(Poly::x(s) - Poly::constant(theta), src.term_value(k + 1));
  }
  FieldElement limit = theta + src.term(5) + src.term(6);
  Poly h = (Poly::x(s) - Poly::constant(limit)).pow(3);
  auto tr = stall_trace(c, h, Value(1));
  auto sd = stable_delta(tr);
  CHECK(sd.delta == 3);
  CHECK(sd.e == 1);
}

TEST_CASE("stable delta in residue characteristic zero") {
  auto s = FieldSpec::q_t();
  KeyChain c(s, V(1));
  std::string theta = "t";
  for (int k = 2; k <= 6; ++k) {
    c.append(P(s, "x - (" + theta + ")"), V(k));
    theta += " + t^" + std::to_string(k);
  }
  auto tr = stall_trace(c, P(s, "x - (" + theta + ")"));
  auto sd = stable_delta(tr);
  CHECK(sd.delta == 1);
  CHECK(sd.e == 0);
  CHECK(!tr.bound_declared);
}

TEST_CASE("stable delta rejects a changing delta") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  Poly h = res.chain.level(3).Q;
  auto tr = stall_trace(res.chain, h, Value(1));
  CHECK_THROWS_AS(stable_delta(tr), Error);
  try {
    stable_delta(tr);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStabilized);
  }
  CHECK_THROWS_AS(stable_delta(tr, 100), Error);
}

TEST_CASE("coefficient congruences along the 2-adic tail") {
  auto q = FieldSpec::rationals(2);
  auto o = fixtures::hensel_oracle();
  Budgets b;
  b.max_steps = 10;
  Poly h = P(q, "x^2+x+2");
  auto res = run(*o, {h}, b);
  auto tr = stall_trace(res.chain, h);
  REQUIRE(tr.top() >= 6);
  CHECK(congruence_span(tr) == 1);
  for (int v : {0, 1}) {
    auto reps = coefficient_congruences(tr, v, o.get());
    CHECK(!reps.empty());
    for (const auto& r : reps) {
      CAPTURE(r.from);
      CAPTURE(r.level);
      CHECK_MESSAGE(r.holds, "v=" << v << ": " << r.value.str() << " vs " << r.threshold.str());
      // the leading coefficient moves strictly; the next one by exactly d_2 Z^2
      CHECK(r.strict == (v == 1 || r.from == r.level));
    }
  }
  auto same = coefficient_congruence(tr, 1, 3, 3);
  CHECK(same.value.is_infinite());
  CHECK_THROWS_AS(coefficient_congruence(tr, 2, 3, 4), Error);
}

TEST_CASE("hand classification of crafted monomials") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  auto tr = stall_trace(res.chain, o->limit(), Value(1));
  auto s = res.chain.spec();
  // level 3 has value 42 - 29 sqrt2 ~ 0.98780; with p^e0 = 4 the line sits at
  // 116 sqrt2 - 160 ~ 4.04877
  const int level = 3;
  const Poly& Q = res.chain.level(level).Q;
  std::vector<Crafted> cases = {
      {1, 3, 0, false, false, false, false, false},   // on the critical line
      {2, 2, 0, false, false, false, false, false},   // on the critical line
      {3, 1, 0, true, false, true, false, false},     // on the line, 3 is not a power of 2
      {1, 2, 0, true, true, false, false, false},     // below the critical line
      {1, 20, -12, true, false, false, true, false},  // 3.029: above, under the line
      {1, 13, -7, false, false, false, true, true},   // 3.100: weight beyond the line
      {2, -1, 2, true, true, false, false, false},    // 1.828
      {2, -2, 3, false, false, false, true, true},    // 2.243
      {2, 19, -12, true, false, false, true, false},  // 2.029
      {3, 4, -3, true, true, true, false, false},     // -0.243: below the critical line
      {3, -3, 3, false, false, true, true, true},     // 1.243
      {3, 18, -12, true, false, true, true, false},   // 1.029
  };
  int checked = 0;
  for (const auto& c : cases) {
    Poly f = Q.pow(4) + Poly::constant(uv_mono(s, c.a, c.b)) * Q.pow(c.j);
    auto rep = classify_bad_monomials(f, tr, level, Value(1), 2);
    REQUIRE(rep.entries.size() == 1);
    const auto& m = rep.entries[0];
    CAPTURE(c.j);
    CAPTURE(c.a);
    CAPTURE(c.b);
    CHECK(m.j == c.j);
    CHECK(m.value == Value(Rational(c.a), Rational(c.b)));
    CHECK(m.bad == c.bad);
    CHECK(m.below_critical == c.below);
    CHECK(m.not_p_power == c.not_power);
    CHECK(m.above_critical == c.above);
    CHECK(m.removable == c.removable);
    CHECK(rep.greatest.has_value() == c.bad);
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("greatest and lexicographically minimal bad indices") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  auto tr = stall_trace(res.chain, o->limit(), Value(1));
  auto s = res.chain.spec();
  const Poly& Q = res.chain.level(3).Q;
  Poly f = Q.pow(4) + Poly::constant(uv_mono(s, 18, -12)) * Q.pow(3) + Poly::constant(uv_mono(s, -1, 2)) * Q.pow(2) +
           Poly::constant(uv_mono(s, 3, 0)) * Q;
  auto rep = classify_bad_monomials(f, tr, 3, Value(1), 2);
  CHECK(rep.greatest == 3);
  CHECK(rep.lex_min == 2);
  CHECK_THROWS_AS(classify_bad_monomials(f, tr, 1, Value(1), 2), Error);
  try {
    classify_bad_monomials(f, tr, 1, Value(1), 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GapConditionUnmet);
  }
}

TEST_CASE("bad monomial elimination") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  auto tr = stall_trace(res.chain, o->limit(), Value(1));
  auto s = res.chain.spec();
  const Poly& Q = res.chain.level(3).Q;
  Poly f = Q.pow(4) + Poly::constant(uv_mono(s, 18, -12)) * Q.pow(3) + Poly::constant(uv_mono(s, 19, -12)) * Q.pow(2) +
           Poly::constant(uv_mono(s, 3, 0)) * Q + Poly::constant(uv_mono(s, 5, 0));
  auto out = reduce_to_weakly_affine(f, tr, 3, 2);
  const auto& c = out.candidate;
  CHECK(c.degree == 4);
  CHECK(c.weakly_affine.passed);
  CHECK(c.critical_line.passed);
  CHECK(c.coeff_values.at(1) == V(3));
  CHECK(!c.coeffs.count(3));
  bool removed = false;
  for (const auto& st : out.report.steps) removed |= st.action == "remove_bad";
  CHECK(removed);
  CHECK(failed(out.report.checks) == "");
}

TEST_CASE("limit candidate on the stall fixture") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  LimitOptions opt;
  opt.window = 6;
  auto out = build_limit_candidate(res.chain, *o, {P(res.chain.spec(), "x^3 + u"), o->limit()}, opt);
  const auto& c = out.candidate;
  CHECK(out.report.delta == 2);
  CHECK(c.e0 == 1);
  CHECK(c.degree == 2);
  CHECK(c.coeffs.size() == 3);
  CHECK(c.coeff_values.at(1) == V(1));
  CHECK(c.weakly_affine.passed);
  CHECK(c.critical_line.passed);
  CHECK(failed(out.report.checks) == "");
  CHECK(out.report.violations.empty());
  // the coefficient of Q_i sits on the critical line, so p^e0 = 2 cannot divide
  // every exponent
  CHECK(c.exponent_divisibility.applicable);
  CHECK(!c.exponent_divisibility.passed);
}

TEST_CASE("limit candidate for a purely inseparable limit") {
  auto o = fixtures::stall_oracle("0");
  auto res = fixtures::stall_run(*o);
  REQUIRE(res.status == RunStatus::StallDetected);
  auto out = build_limit_candidate(res.chain, *o, {o->limit()});
  const auto& c = out.candidate;
  CHECK(c.degree == 2);
  CHECK(c.coeffs.size() == 2);
  CHECK(c.weakly_affine.passed);
  CHECK(c.exponent_divisibility.passed);
  auto tr = stall_trace(res.chain, o->limit(), Value(1));
  CHECK(exponent_divisibility_check(c.poly, tr, 1).passed);
  CHECK(exponent_divisibility_check(c.poly, tr, 0).passed);
  Poly stray = c.poly + res.chain.top().Q * FieldElement::monomial(res.chain.spec(), Value(Rational(0), Rational(1)));
  CHECK(!exponent_divisibility_check(stray, tr, 1).passed);
}

TEST_CASE("limit candidate refusals") {
  auto o = fixtures::stall_oracle();
  auto res = fixtures::stall_run(*o);
  try {
    build_limit_candidate(res.chain, *o, {P(res.chain.spec(), "x")});
    FAIL("expected NoDefectiveProbe");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoDefectiveProbe);
  }
  auto s = FieldSpec::q_t();
  KeyChain c(s, V(1));
  c.append(P(s, "x - t"), V(2));
  c.append(P(s, "x - t - t^2"), V(3));
  ChainOracle co(c);
  CHECK_THROWS_AS(build_limit_candidate(c, co, {P(s, "x - t - t^2 - t^3")}), Error);
}

TEST_CASE("inverse modulo a key polynomial") {
  auto q = FieldSpec::rationals(2);
  Poly m = P(q, "x^2 - 2");
  Poly a = P(q, "x + 3");
  Poly g = inverse_mod(a, m);
  CHECK(evaluate_mod(g * a, m) == P(q, "1"));
  CHECK(inverse_mod(P(q, "5"), P(q, "x")) == P(q, "1/5"));
}
