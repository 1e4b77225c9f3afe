#include "keypoly/graded.hpp"

#include "keypoly/error.hpp"

namespace keypoly {

int exponent_in(const KeyChain& chain, const Value& gamma, int i) {
  if (i == 0) {
    if (!chain.group(0).contains(gamma)) throw Error(ErrorKind::InvalidInput, "value " + gamma.str() + " is not in the base group");
    return 0;
  }
  const Level& L = chain.level(i);
  for (long e = 0; e < L.abar; ++e) {
    Value rest = e == 0 ? gamma : gamma - L.beta * Rational(e);
    if (L.group_before.contains(rest)) return int(e);
  }
  throw Error(ErrorKind::InvalidInput, "value " + gamma.str() + " is not in the value group of level " + std::to_string(i));
}

RElem carry(const KeyChain& chain, const Value& a, const Value& b, int i) {
  TowerPtr F = chain.residue_field(i);
  if (i == 0) return F->one();
  const Level& L = chain.level(i);
  int ea = exponent_in(chain, a, i), eb = exponent_in(chain, b, i);
  Value a1 = a - L.beta * Rational(ea), b1 = b - L.beta * Rational(eb);
  RElem c = F->embed(carry(chain, a1, b1, i - 1));
  if (ea + eb >= L.abar) {
    Value y = L.beta * Rational(L.abar);
    c = F->mul(c, L.zeta);
    c = F->mul(c, F->embed(carry(chain, a1 + b1, y, i - 1)));
  }
  return c;
}

Poly monomial_poly(const KeyChain& chain, const Value& gamma, int i) {
  if (i == 0) return Poly::constant(FieldElement::monomial(chain.spec(), gamma));
  const Level& L = chain.level(i);
  int e = exponent_in(chain, gamma, i);
  Poly rest = monomial_poly(chain, gamma - L.beta * Rational(e), i - 1);
  return e ? rest * L.Q.pow(e) : rest;
}

namespace {

// pi(gamma) * pi(y)^k = C * pi(gamma + k*y) at level i.
RElem carry_power(const KeyChain& chain, const Value& gamma, const Value& y, int k, int i) {
  TowerPtr F = chain.residue_field(i);
  RElem C = F->one();
  Value acc = gamma;
  for (int t = 0; t < k; ++t) {
    C = F->mul(C, carry(chain, acc, y, i));
    acc = acc + y;
  }
  return C;
}

}  // namespace

ResidueValue residue_coefficient(const KeyChain& chain, const Poly& g, int i) {
  if (g.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "residue of zero");
  if (i == 0) {
    if (g.degree() > 0) throw Error(ErrorKind::InvalidInput, "level 0 residue of a nonconstant");
    const FieldElement& c = g.coeffs()[0];
    return {val(c), chain.residue_field(0)->from_scalar(normalized_residue(c))};
  }
  if (g.degree() == 0) {
    ResidueValue r = residue_coefficient(chain, g, 0);
    r.residue = chain.residue_field(i)->embed(r.residue);
    return r;
  }
  const Level& L = chain.level(i);
  TowerPtr F = chain.residue_field(i);
  TowerPtr Fb = chain.residue_field(i - 1);
  StandardExpansion e = chain.expand(g, i);
  std::vector<std::optional<ResidueValue>> parts(e.coeffs.size());
  Value best = Value::infinity();
  for (size_t m = 0; m < e.coeffs.size(); ++m) {
    if (e.coeffs[m].is_zero()) continue;
    parts[m] = residue_coefficient(chain, e.coeffs[m], i - 1);
    best = min(best, parts[m]->value + L.beta * Rational(long(m)));
  }
  int ex = exponent_in(chain, best, i);
  Value y = L.beta * Rational(L.abar);
  RElem r = F->zero();
  for (size_t m = 0; m < parts.size(); ++m) {
    if (!parts[m] || parts[m]->value + L.beta * Rational(long(m)) != best) continue;
    long k = (long(m) - ex) / L.abar;
    RElem C = carry_power(chain, parts[m]->value, y, int(k), i - 1);
    RElem term = F->embed(Fb->mul(parts[m]->residue, C));
    term = F->mul(term, F->pow(L.zeta, Integer(k)));
    r = F->add(r, term);
  }
  return {best, r};
}

Poly lift(const KeyChain& chain, const RElem& r, const Value& gamma, int i) {
  if (i == 0) {
    TowerPtr F = chain.residue_field(0);
    if (F->is_zero(r)) return Poly(chain.spec());
    return Poly::constant(lift_residue(chain.spec(), r.c[0]) * FieldElement::monomial(chain.spec(), gamma));
  }
  const Level& L = chain.level(i);
  TowerPtr F = chain.residue_field(i);
  TowerPtr Fb = chain.residue_field(i - 1);
  int e = exponent_in(chain, gamma, i);
  Value g1 = gamma - L.beta * Rational(e);
  Poly Qe = L.Q.pow(e);
  if (!L.has_generator()) {
    RElem rb = r;
    rb.c.resize(Fb->degree());
    return lift(chain, rb, g1, i - 1) * Qe;
  }
  size_t m = Fb->degree();
  int d = int(L.lambda.size()) - 1;
  Value y = L.beta * Rational(L.abar);
  RElem full = F->embed(r);
  Poly acc(chain.spec());
  Poly Qa = L.Q.pow(int(L.abar));
  Poly Qk = Qe;
  for (int k = 0; k < d; ++k) {
    RElem rk{std::vector<Scalar>(full.c.begin() + long(k * m), full.c.begin() + long((k + 1) * m))};
    if (!Fb->is_zero(rk)) {
      Value gk = g1 - y * Rational(k);
      RElem C = carry_power(chain, gk, y, k, i - 1);
      acc += lift(chain, Fb->div(rk, C), gk, i - 1) * Qk;
    }
    Qk = Qk * Qa;
  }
  return acc;
}

GradedElement initial_form(const KeyChain& chain, const Poly& h, int i) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "initial form of zero");
  if (i < 1) throw Error(ErrorKind::InvalidInput, "initial forms start at level 1");
  const Level& L = chain.level(i);
  TowerPtr F = chain.residue_field(i - 1);
  StandardExpansion e = chain.expand(h, i);
  std::vector<std::optional<ResidueValue>> parts(e.coeffs.size());
  std::vector<Value> tot(e.coeffs.size(), Value::infinity());
  Value best = Value::infinity();
  for (size_t j = 0; j < e.coeffs.size(); ++j) {
    if (e.coeffs[j].is_zero()) continue;
    if (j > 0 && L.beta.is_infinite()) continue;
    parts[j] = residue_coefficient(chain, e.coeffs[j], i - 1);
    tot[j] = j == 0 ? parts[j]->value : parts[j]->value + L.beta * Rational(long(j));
    best = min(best, tot[j]);
  }
  if (best.is_infinite()) throw Error(ErrorKind::ZeroPolynomial, "initial form has infinite value");
  GradedElement g;
  g.level = i;
  g.value = best;
  g.field = F;
  for (size_t j = 0; j < tot.size(); ++j)
    if (parts[j] && tot[j] == best) g.support.push_back(int(j));
  g.residual.assign(size_t(g.support.back()) + 1, F->zero());
  for (int j : g.support) g.residual[size_t(j)] = parts[size_t(j)]->residue;
  g.lowest = g.support.front();
  if (L.beta.is_infinite()) {
    g.reduced = {parts[0]->residue};
    return g;
  }
  Value y = L.beta * Rational(L.abar);
  const Value& base = parts[size_t(g.lowest)]->value;
  int span = (g.support.back() - g.lowest) / int(L.abar);
  g.reduced.assign(size_t(span) + 1, F->zero());
  for (int j : g.support) {
    int k = (j - g.lowest) / int(L.abar);
    RElem C = carry_power(chain, parts[size_t(j)]->value, y, k, i - 1);
    (void)base;
    g.reduced[size_t(k)] = F->mul(parts[size_t(j)]->residue, C);
  }
  return g;
}

Poly integral_relation_lift(const KeyChain& chain, const RPoly& lambda) {
  int ell = chain.length();
  const Level& L = chain.level(ell);
  if (L.beta.is_infinite()) throw Error(ErrorKind::InvalidInput, "no lift above an infinite value");
  TowerPtr F = chain.residue_field(ell - 1);
  RPoly lam = lambda;
  F->trim(lam);
  if (lam.size() < 2 || !F->is_one(lam.back())) throw Error(ErrorKind::NotIrreducible, "residual factor must be monic of positive degree");
  if (!is_irreducible(*F, lam)) throw Error(ErrorKind::NotIrreducible, "residual factor " + F->pstr(lam) + " is reducible");
  int d = int(lam.size()) - 1;
  Value y = L.beta * Rational(L.abar);
  Poly Qa = L.Q.pow(int(L.abar));
  Poly result = Qa.pow(d);
  Poly Qk = Poly::constant(FieldElement::one(chain.spec()));
  for (int k = 0; k < d; ++k) {
    if (!F->is_zero(lam[size_t(k)])) {
      // pi(y)^(d-k) = C * pi((d-k) y)
      RElem C = carry_power(chain, y, y, d - k - 1, ell - 1);
      RElem coeff = F->neg(F->mul(lam[size_t(k)], C));
      result -= lift(chain, coeff, y * Rational(d - k), ell - 1) * Qk;
    }
    Qk = Qk * Qa;
  }
  return result;
}

}  // namespace keypoly
