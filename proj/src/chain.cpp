#include "keypoly/chain.hpp"

#include "keypoly/error.hpp"
#include "keypoly/graded.hpp"

namespace keypoly {

Poly StandardExpansion::reconstruct(const Poly& Q) const {
  Poly acc(Q.spec());
  for (size_t j = coeffs.size(); j-- > 0;) acc = acc * Q + coeffs[j];
  return acc;
}

KeyChain::KeyChain(const FieldSpec& spec, const Value& beta1) : spec_(spec) {
  if (!(beta1 > Value(0))) throw Error(ErrorKind::NonPositiveValueOfX, "value of x must be positive, got " + beta1.str());
  base_field_ = TowerField::base(spec.residue_char());
  Level L;
  L.Q = Poly::x(spec);
  L.beta = beta1;
  L.alpha = 1;
  L.group_before = spec.value_group();
  if (beta1.is_finite()) {
    auto idx = L.group_before.index_of(beta1);
    if (!idx) throw Error(ErrorKind::InvalidInput, "value " + beta1.str() + " has infinite index");
    L.abar = idx->get_si();
  }
  L.field_before = base_field_;
  levels_.push_back(L);
}

const Level& KeyChain::level(int i) const {
  if (i < 1 || i > length()) throw Error(ErrorKind::InvalidInput, "chain level " + std::to_string(i) + " out of range");
  return levels_[size_t(i - 1)];
}

TowerPtr KeyChain::residue_field(int i) const {
  if (i == 0) return base_field_;
  const Level& L = level(i);
  if (!L.closed) throw Error(ErrorKind::InvalidInput, "residue field of the top level is not determined");
  return L.field_after;
}

ValueGroup KeyChain::group(int i) const {
  if (i == 0) return spec_.value_group();
  const Level& L = level(i);
  if (L.beta.is_infinite()) return L.group_before;
  return L.group_before.with(L.beta);
}

void KeyChain::append(const Poly& Q, const Value& beta) {
  Level& T = levels_.back();
  int ell = length();
  if (T.beta.is_infinite()) throw Error(ErrorKind::InvalidInput, "cannot extend past an infinite value");
  if (!Q.is_monic()) throw Error(ErrorKind::InvalidInput, "key polynomial must be monic");
  int dq = T.Q.degree();
  if (Q.degree() % dq != 0 || Q.degree() <= 0) throw Error(ErrorKind::InvalidInput, "degree of Q is not a multiple of the previous degree");
  int alpha = Q.degree() / dq;
  GradedElement g = initial_form(*this, Q, ell);
  if (g.support.front() != 0 || g.support.back() != alpha)
    throw Error(ErrorKind::InvalidInput, "polynomial " + Q.str() + " is not a key polynomial over this chain");
  if (alpha % T.abar != 0 || g.reduced.size() != size_t(alpha / T.abar + 1))
    throw Error(ErrorKind::InvalidInput, "residual degree does not match");
  TowerPtr F = T.field_before;
  RPoly lam = F->pmonic(g.reduced);
  if (!is_irreducible(*F, lam)) throw Error(ErrorKind::NotIrreducible, "residual polynomial " + F->pstr(lam) + " is reducible");
  Value bound = T.beta * Rational(alpha);
  if (!(beta > bound))
    throw Error(ErrorKind::InvalidInput, "value " + beta.str() + " must exceed " + bound.str());
  T.closed = true;
  T.lambda = lam;
  if (lam.size() > 2) {
    T.field_after = F->extend(lam);
    T.zeta = T.field_after->generator();
  } else {
    T.field_after = F;
    T.zeta = F->neg(F->embed(lam[0]));
  }
  Level N;
  N.Q = Q;
  N.beta = beta;
  N.alpha = alpha;
  N.group_before = T.group_before.with(T.beta);
  if (beta.is_finite()) {
    auto idx = N.group_before.index_of(beta);
    if (!idx) throw Error(ErrorKind::InvalidInput, "value " + beta.str() + " has infinite index");
    N.abar = idx->get_si();
  }
  N.field_before = T.field_after;
  levels_.push_back(N);
}

KeyChain KeyChain::prefix(int n) const {
  if (n < 1 || n > length()) throw Error(ErrorKind::InvalidInput, "prefix length out of range");
  KeyChain c = *this;
  c.levels_.resize(size_t(n));
  Level& T = c.levels_.back();
  T.closed = false;
  T.lambda.clear();
  T.field_after.reset();
  T.zeta = RElem{};
  c.limit.reset();
  return c;
}

StandardExpansion KeyChain::expand(const Poly& h, int i) const {
  const Poly& Q = level(i).Q;
  StandardExpansion e;
  e.level = i;
  if (h.is_zero()) return e;
  if (h.degree() < Q.degree()) {
    e.coeffs.push_back(h);
    return e;
  }
  Poly cur = h;
  while (!cur.is_zero()) {
    Poly q, r;
    euclid_div(cur, Q, q, r);
    e.coeffs.push_back(r);
    cur = q;
  }
  return e;
}

Value KeyChain::truncation(const Poly& h, int i) const {
  if (h.is_zero()) return Value::infinity();
  if (i == 0) {
    if (h.degree() > 0) throw Error(ErrorKind::InvalidInput, "level 0 applies to constants only");
    return val(h.coeffs()[0]);
  }
  if (i == 1 && h.degree() == 0) return val(h.coeffs()[0]);
  const Level& L = level(i);
  StandardExpansion e = expand(h, i);
  Value best = Value::infinity();
  for (size_t j = 0; j < e.coeffs.size(); ++j) {
    if (e.coeffs[j].is_zero()) continue;
    if (j > 0 && L.beta.is_infinite()) continue;
    Value v = truncation(e.coeffs[j], i - 1);
    if (j > 0) v = v + L.beta * Rational(long(j));
    best = min(best, v);
  }
  return best;
}

std::vector<Value> KeyChain::coefficient_values(const StandardExpansion& e) const {
  std::vector<Value> out;
  for (const auto& d : e.coeffs) out.push_back(truncation(d, e.level - 1));
  return out;
}

Value KeyChain::limit_truncation(const Poly& h) const {
  if (!limit) throw Error(ErrorKind::InvalidInput, "chain has no limit marker");
  if (h.is_zero()) return Value::infinity();
  StandardExpansion e;
  Poly cur = h;
  while (!cur.is_zero()) {
    Poly q, r;
    euclid_div(cur, limit->Q, q, r);
    e.coeffs.push_back(r);
    cur = q;
  }
  Value best = Value::infinity();
  for (size_t j = 0; j < e.coeffs.size(); ++j) {
    if (e.coeffs[j].is_zero()) continue;
    Value v = top_truncation(e.coeffs[j]);
    if (j > 0) v = v + limit->beta * Rational(long(j));
    best = min(best, v);
  }
  return best;
}

std::vector<int> support_set(const KeyChain& chain, const Poly& h, int i, const Value& beta) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "support of zero");
  StandardExpansion e = chain.expand(h, i);
  std::vector<Value> vals = chain.coefficient_values(e);
  Value best = Value::infinity();
  std::vector<Value> tot(vals.size(), Value::infinity());
  for (size_t j = 0; j < vals.size(); ++j) {
    if (vals[j].is_infinite()) continue;
    tot[j] = j == 0 ? vals[j] : vals[j] + beta * Rational(long(j));
    best = min(best, tot[j]);
  }
  std::vector<int> S;
  for (size_t j = 0; j < vals.size(); ++j)
    if (!vals[j].is_infinite() && tot[j] == best) S.push_back(int(j));
  return S;
}

bool determines_side(const KeyChain& chain, const Poly& h, int i, const Value& beta) {
  if (h.is_zero()) return false;
  return support_set(chain, h, i, beta).size() >= 2;
}

NewtonPolygon newton_polygon(const KeyChain& chain, const Poly& h, int i) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Newton polygon of zero");
  NewtonPolygon P;
  StandardExpansion e = chain.expand(h, i);
  std::vector<Value> vals = chain.coefficient_values(e);
  for (size_t j = 0; j < vals.size(); ++j)
    if (!vals[j].is_infinite()) P.points.push_back({int(j), vals[j]});
  // lower hull; a middle point is dropped when it lies on or above the chord
  auto above = [](const std::pair<int, Value>& A, const std::pair<int, Value>& B, const std::pair<int, Value>& C) {
    Value lhs = (B.second - A.second) * Rational(C.first - A.first);
    Value rhs = (C.second - A.second) * Rational(B.first - A.first);
    return lhs >= rhs;
  };
  for (const auto& pt : P.points) {
    while (P.hull.size() >= 2 && above(P.hull[P.hull.size() - 2], P.hull.back(), pt)) P.hull.pop_back();
    P.hull.push_back(pt);
  }
  for (size_t k = 0; k + 1 < P.hull.size(); ++k) {
    const auto& A = P.hull[k];
    const auto& B = P.hull[k + 1];
    P.sides.push_back({(B.second - A.second) / Rational(B.first - A.first), A.first, B.first});
  }
  return P;
}

}  // namespace keypoly
