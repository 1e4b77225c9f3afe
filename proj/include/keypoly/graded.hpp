#pragma once

#include <vector>

#include "keypoly/chain.hpp"

namespace keypoly {

/// A homogeneous element r * pi_i(value) of the graded algebra.
struct ResidueValue {
  Value value;
  RElem residue;
};

/// Initial form of h at level i. The residual is written in powers of the
/// class of Q_i; the reduced residual is the same form in the degree-zero
/// variable Z = Q_i^abar / pi(abar * beta_i), shifted by the lowest index.
struct GradedElement {
  int level = 0;
  Value value;
  std::vector<int> support;
  TowerPtr field;
  RPoly residual;
  int lowest = 0;
  RPoly reduced;
  int degree() const { return support.empty() ? 0 : support.back(); }
};

/// Unique e in [0, abar_i) with gamma - e*beta_i in the group of level i-1.
int exponent_in(const KeyChain& chain, const Value& gamma, int i);
/// pi_i(a) pi_i(b) = carry * pi_i(a + b), as an element of F_i.
RElem carry(const KeyChain& chain, const Value& a, const Value& b, int i);
/// Canonical monomial pi_i(gamma) as a polynomial.
Poly monomial_poly(const KeyChain& chain, const Value& gamma, int i);
/// in(g) = residue * in(pi_i(value)) for deg g < deg Q_{i+1}.
ResidueValue residue_coefficient(const KeyChain& chain, const Poly& g, int i);
/// Polynomial of degree < deg Q_{i+1} whose initial form is r * pi_i(gamma).
Poly lift(const KeyChain& chain, const RElem& r, const Value& gamma, int i);

GradedElement initial_form(const KeyChain& chain, const Poly& h, int i);
/// Next key polynomial determined by a monic irreducible residual factor at
/// the top level.
Poly integral_relation_lift(const KeyChain& chain, const RPoly& lambda);

}  // namespace keypoly
