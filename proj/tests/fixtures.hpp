#pragma once

#include <memory>
#include <random>
#include <vector>

#include "keypoly/augment.hpp"
#include "keypoly/graded.hpp"
#include "keypoly/oracle.hpp"
#include "keypoly/parse.hpp"

namespace fixtures {

using namespace keypoly;

inline OraclePtr sqrt2_oracle() {
  auto q = FieldSpec::rationals(2);
  return std::make_shared<EisensteinRootOracle>(parse_polynomial(q, "x^2-2"), 2);
}

/// The root of x^2+x+2 in Q_2 with value 1.
inline OraclePtr hensel_oracle() {
  auto q = FieldSpec::rationals(2);
  return std::make_shared<SeriesOracle>(
      q, std::make_shared<HenselSource>(parse_polynomial(q, "x^2+x+2"), parse_field_element(q, "0"), 16), "hensel");
}

/// t^(2/3) over F_3(t).
inline OraclePtr puiseux_oracle() {
  auto f = FieldSpec::fp_t(3);
  return std::make_shared<SeriesOracle>(
      f, std::make_shared<ListSource>(f, std::vector<SeriesTerm>{{Value::rational(2, 3), Scalar(3, 1L)}}, Value::infinity()));
}

/// Random monic irreducible residual polynomial of degree d with nonzero constant term.
inline RPoly random_irreducible(const TowerField& F, int d, std::mt19937_64& rng) {
  for (;;) {
    RPoly f;
    for (int i = 0; i < d; ++i) f.push_back(F.random(rng));
    f.push_back(F.one());
    if (F.is_zero(f[0])) continue;
    if (is_irreducible(F, f)) return f;
  }
}

/// Random complete chain: every level is the lift of a random residual
/// polynomial and every value is a random rational above the forced bound.
inline KeyChain random_chain(const FieldSpec& spec, std::mt19937_64& rng, int levels, int degree_cap = 32) {
  std::uniform_int_distribution<long> num(1, 5), den(1, 3);
  KeyChain c(spec, Value::rational(num(rng), den(rng)));
  for (int k = 1; k < levels; ++k) {
    const Level& T = c.top();
    TowerPtr F = T.field_before;
    int d = F->is_finite() ? 1 + int(rng() % 2) : 1;
    if (c.top().Q.degree() * d * T.abar > degree_cap) d = 1;
    if (c.top().Q.degree() * d * T.abar > degree_cap) break;
    RPoly lam = random_irreducible(*F, d, rng);
    Poly Q = integral_relation_lift(c, lam);
    long alpha = d * T.abar;
    bool last = k + 1 == levels;
    Value beta = last ? Value::infinity() : T.beta * Rational(alpha) + Value::rational(num(rng), den(rng));
    c.append(Q, beta);
  }
  if (!c.is_complete()) {
    const Level& T = c.top();
    RPoly lam = random_irreducible(*T.field_before, 1, rng);
    c.append(integral_relation_lift(c, lam), Value::infinity());
  }
  return c;
}

}  // namespace fixtures

namespace fixtures {

/// Random polynomial of degree at most deg with small coefficients built from
/// integers and the field variables.
inline Poly random_poly(const FieldSpec& spec, std::mt19937_64& rng, int deg) {
  static const char* q_atoms[] = {"0", "1", "-1", "2", "3", "4", "6", "1/3"};
  static const char* t_atoms[] = {"0", "1", "-1", "t", "t^2", "1+t", "t^3", "2*t"};
  static const char* uv_atoms[] = {"0", "1", "u", "v", "u*v", "u+v", "u^2", "v^2"};
  const char** atoms = spec.nvars() == 0 ? q_atoms : spec.nvars() == 1 ? t_atoms : uv_atoms;
  std::vector<FieldElement> c;
  for (int k = 0; k <= deg; ++k) c.push_back(parse_field_element(spec, atoms[rng() % 8]));
  if (c.back().is_zero()) c.back() = FieldElement::one(spec);
  return Poly(spec, c);
}

}  // namespace fixtures

namespace fixtures {

/// Bounded alpha = 1 fixture over F_2(u, v): theta is the sum of the
/// convergent terms w_k, and the limit polynomial x^2 + c1*x + c0 with
/// c0 = sum_{k<n} (w_k^2 + c1*w_k) is scripted to the value 3.
inline std::shared_ptr<const ScriptedLimitOracle> stall_oracle(const std::string& c1 = "u", int n = 12) {
  auto uv = FieldSpec::fp_uv(2);
  auto src = std::make_shared<Sqrt2ConvergentSource>(uv, n + 2);
  auto inner = std::make_shared<SeriesOracle>(uv, src, "sqrt2_convergents");
  FieldElement a = parse_field_element(uv, c1);
  FieldElement c0 = FieldElement::zero(uv);
  for (int k = 0; k < n; ++k) c0 += src->term(k) * src->term(k) + a * src->term(k);
  Poly limit(uv, {c0, a, FieldElement::one(uv)});
  return std::make_shared<ScriptedLimitOracle>(inner, limit, Value(3));
}

}  // namespace fixtures

namespace fixtures {

/// Chain from running the stall oracle on its limit polynomial.
inline RunResult stall_run(const ScriptedLimitOracle& oracle, int window = 8) {
  Budgets b;
  b.max_steps = 20;
  b.stall_window = window;
  return run(oracle, {oracle.limit()}, b);
}

}  // namespace fixtures
