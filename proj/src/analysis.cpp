#include "keypoly/analysis.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "keypoly/error.hpp"

namespace keypoly {

int p_adic_order(long n, uint64_t p) {
  if (n == 0) return -1;
  if (p <= 1) return 1;
  int e = 0;
  while (n % long(p) == 0) {
    n /= long(p);
    ++e;
  }
  return e;
}

bool is_p_power(long n, uint64_t p) {
  if (n < 1) return false;
  if (p <= 1) return n == 1;
  while (n % long(p) == 0) n /= long(p);
  return n == 1;
}

namespace {

long ipow(uint64_t p, int e) {
  long r = 1;
  for (int k = 0; k < e; ++k) r *= long(p);
  return r;
}

Value term_value(const std::vector<Value>& vals, size_t j, const Value& beta) {
  if (vals[j].is_infinite()) return vals[j];
  if (j == 0) return vals[0];
  if (beta.is_infinite()) return beta;
  return vals[j] + beta * Rational(long(j));
}

Check make_check(const std::string& name) {
  Check c;
  c.name = name;
  return c;
}

void fail(Check& c, const std::string& why) {
  if (c.passed) c.detail = why;
  c.passed = false;
}

}  // namespace

EffectiveBound effective_bound(const KeyChain& chain, int i) {
  const Level& L = chain.level(i);
  if (L.beta.is_infinite()) throw Error(ErrorKind::InvalidInput, "level " + std::to_string(i) + " has infinite value");
  uint64_t p = chain.spec().p_power_base();
  EffectiveBound B;
  B.level = i;
  std::vector<std::pair<int, Value>> ratios;
  for (int b = 1; b <= L.Q.degree(); ++b) {
    Poly D = hasse_derivative(L.Q, b);
    if (D.is_zero()) continue;
    Value v = chain.truncation(D, i - 1);
    if (v < Value(0)) B.derivatives_nonnegative = false;
    ratios.push_back({b, (L.beta - v) / Rational(b)});
  }
  Value best = ratios.front().second;
  for (const auto& r : ratios) best = max(best, r.second);
  for (const auto& r : ratios)
    if (r.second == best) B.I_max.push_back(r.first);
  B.b = B.I_max.front();
  B.ratio = best;
  B.slope = best * Rational(B.b);
  B.e = is_p_power(B.b, p) ? (p <= 1 ? 0 : p_adic_order(B.b, p)) : -1;
  for (int b : B.I_max)
    if (!is_p_power(b, p)) B.p_powers = false;
  return B;
}

bool DerivativeReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.applicable || c.passed; });
}

std::vector<int> default_derivative_probes(const KeyChain& chain, const Poly& h, int i) {
  EffectiveBound B = effective_bound(chain, i);
  uint64_t p = chain.spec().p_power_base();
  int n = std::max(h.degree(), 0);
  std::set<int> out{0};
  if (p > 1)
    for (long b = B.b; b <= n; b *= long(p)) out.insert(int(b));
  else if (B.b <= n)
    out.insert(B.b);
  for (int b = 1; b <= std::min(8, n); ++b) out.insert(b);
  return {out.begin(), out.end()};
}

DerivativeReport derivative_value_report(const KeyChain& chain, const Poly& h, int i, const std::vector<int>& probes) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "derivative report of zero");
  const Level& L = chain.level(i);
  uint64_t p = chain.spec().p_power_base();
  DerivativeReport rep;
  rep.level = i;
  rep.bound = effective_bound(chain, i);
  const EffectiveBound& B = rep.bound;
  const Value R = B.slope;
  rep.value = chain.truncation(h, i);
  std::vector<int> orders = probes.empty() ? default_derivative_probes(chain, h, i) : probes;

  auto bound_at = [&](const Value& base, int b) { return base - R * (Rational(b) / Rational(B.b)); };
  auto derivative_value = [&](const Poly& f, int b) { return chain.truncation(hasse_derivative(f, b), i); };

  Check ineq = make_check("derivative_bound");
  for (int b : orders) {
    DerivativeRow row;
    row.b = b;
    row.value = derivative_value(h, b);
    row.bound = bound_at(rep.value, b);
    row.holds = row.value >= row.bound;
    row.equality = row.value == row.bound;
    if (!row.holds) fail(ineq, "strict violation at b=" + std::to_string(b));
    rep.rows.push_back(row);
  }
  rep.checks.push_back(ineq);

  StandardExpansion ex = chain.expand(h, i);
  std::vector<Value> vals = chain.coefficient_values(ex);
  std::vector<Value> tot(vals.size());
  for (size_t j = 0; j < vals.size(); ++j) tot[j] = term_value(vals, j, L.beta);
  for (size_t j = 0; j < tot.size(); ++j)
    if (!vals[j].is_infinite() && tot[j] == rep.value) rep.support.push_back(int(j));

  // the inequality holds term by term
  Check terms = make_check("derivative_bound_terms");
  for (size_t j = 0; j < ex.coeffs.size(); ++j) {
    if (ex.coeffs[j].is_zero()) continue;
    Poly T = ex.coeffs[j] * L.Q.pow(int(j));
    Value tv = chain.truncation(T, i);
    for (int b : orders)
      if (derivative_value(T, b) < bound_at(tv, b)) fail(terms, "term " + std::to_string(j) + " at b=" + std::to_string(b));
  }
  rep.checks.push_back(terms);

  // minimizing triple (value, nu_p(j), j) with nu_p(0) infinite
  Check predicted = make_check("predicted_equality");
  {
    std::optional<std::tuple<Value, long, int>> best;
    for (size_t j = 0; j < vals.size(); ++j) {
      if (vals[j].is_infinite() || tot[j].is_infinite()) continue;
      long vp = j == 0 ? std::numeric_limits<long>::max() : p_adic_order(long(j), p);
      auto key = std::make_tuple(tot[j], vp, int(j));
      if (!best || key < *best) best = key;
    }
    if (!best || std::get<2>(*best) == 0 || B.e < 0) {
      predicted.applicable = false;
    } else {
      int e = p <= 1 ? 0 : int(std::get<1>(*best));
      rep.predicted_b = B.b * int(ipow(p, e));
      Value v = derivative_value(h, *rep.predicted_b);
      if (v != bound_at(rep.value, *rep.predicted_b))
        fail(predicted, "no equality at b=" + std::to_string(*rep.predicted_b) + ": " + v.str());
    }
  }
  rep.checks.push_back(predicted);

  Check divis = make_check("equality_divisibility");
  Check attained = make_check("support_equality");
  Check flag = make_check("not_power_of_x_p");
  {
    int e = -1;
    for (int j : rep.support)
      if (j > 0) e = e < 0 ? p_adic_order(j, p) : std::min(e, p_adic_order(j, p));
    if (p <= 1 || e < 0 || B.e < 0) {
      divis.applicable = attained.applicable = flag.applicable = false;
    } else {
      rep.support_exponent = e;
      long m = ipow(p, e + B.e);
      for (const auto& row : rep.rows)
        if (row.b > 0 && row.equality && row.b % m != 0) fail(divis, "equality at b=" + std::to_string(row.b));
      if (derivative_value(h, int(m)) != bound_at(rep.value, int(m))) fail(attained, "no equality at b=" + std::to_string(m));
      bool outside = false;
      for (int k = 0; k <= h.degree(); ++k)
        if (!h.coeff(k).is_zero() && k % (m * long(p)) != 0) outside = true;
      if (!outside) fail(flag, "h is a polynomial in x^" + std::to_string(m * long(p)));
    }
  }
  rep.checks.push_back(divis);
  rep.checks.push_back(attained);
  rep.checks.push_back(flag);

  // indices of the support whose lower support members are all divisible by p^(nu_p(j)+1)
  std::vector<int> admissible;
  for (int j : rep.support) {
    if (j == 0) {
      admissible.push_back(0);
      continue;
    }
    long m = p <= 1 ? 1 : ipow(p, p_adic_order(j, p) + 1);
    bool ok = true;
    for (int j2 : rep.support)
      if (j2 < j && j2 % m != 0) ok = false;
    if (ok) admissible.push_back(j);
  }
  Check exact = make_check("support_derivatives");
  Check recon = make_check("value_from_derivatives");
  if (B.e < 0 || rep.value.is_infinite()) {
    exact.applicable = recon.applicable = false;
  } else {
    std::vector<Value> scan;
    Value lo = Value::infinity();
    for (size_t j = 0; j < ex.coeffs.size(); ++j) {
      Value v = derivative_value(h, int(j) * B.b);
      scan.push_back(v.is_infinite() ? v : v + R * Rational(long(j)));
      lo = min(lo, scan.back());
    }
    if (lo != rep.value) fail(recon, "minimum " + lo.str() + " differs from " + rep.value.str());
    for (int j : admissible) {
      if (derivative_value(h, j * B.b) != bound_at(rep.value, j * B.b)) fail(exact, "index " + std::to_string(j));
      if (scan[size_t(j)] != rep.value) fail(recon, "minimum not attained at " + std::to_string(j));
    }
  }
  rep.checks.push_back(exact);
  rep.checks.push_back(recon);
  return rep;
}

namespace {

struct NextSupport {
  std::vector<int> S;
  std::vector<Poly> coeffs;
};

// S_{i,i+1}: indices j of the (i+1)-expansion with nu_i(d_j Q_{i+1}^j) = nu_i(h).
NextSupport next_support(const KeyChain& chain, const Poly& h, int i, const Value& vh) {
  NextSupport out;
  StandardExpansion ex = chain.expand(h, i + 1);
  out.coeffs = ex.coeffs;
  Value q = chain.truncation(chain.level(i + 1).Q, i);
  for (size_t j = 0; j < ex.coeffs.size(); ++j) {
    if (ex.coeffs[j].is_zero()) continue;
    Value v = chain.truncation(ex.coeffs[j], i) + q * Rational(long(j));
    if (v == vh) out.S.push_back(int(j));
  }
  return out;
}

}  // namespace

CharacterPair delta_epsilon(const KeyChain& chain, const Poly& h, int i) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "characters of zero");
  const Level& L = chain.level(i);
  StandardExpansion ex = chain.expand(h, i);
  std::vector<Value> vals = chain.coefficient_values(ex);
  std::vector<Value> tot(vals.size());
  for (size_t j = 0; j < vals.size(); ++j) tot[j] = term_value(vals, j, L.beta);
  CharacterPair c;
  c.level = i;
  c.value = Value::infinity();
  for (const auto& v : tot) c.value = min(c.value, v);
  c.delta = 0;
  if (c.value.is_finite())
    for (size_t j = 0; j < tot.size(); ++j)
      if (tot[j] == c.value) c.delta = int(j);
  c.plus = Value::infinity();
  for (size_t j = size_t(c.delta) + 1; j < tot.size(); ++j) c.plus = min(c.plus, tot[j]);
  if (c.plus.is_finite())
    for (size_t j = size_t(c.delta) + 1; j < tot.size(); ++j)
      if (tot[j] == c.plus) c.epsilon = int(j);
  c.pivotal = {c.delta, size_t(c.delta) < vals.size() ? vals[size_t(c.delta)] : Value::infinity()};
  if (i < chain.length() && c.value.is_finite()) {
    NextSupport ns = next_support(chain, h, i, c.value);
    if (!ns.S.empty()) {
      int theta = ns.S.front();
      c.characteristic = std::make_pair(theta, chain.truncation(ns.coeffs[size_t(theta)], i));
    }
  }
  return c;
}

bool CharacterTrace::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return !c.second.applicable || c.second.passed; });
}

CharacterTrace character_trace(const KeyChain& chain, const Poly& h) {
  CharacterTrace tr;
  for (int i = 1; i <= chain.length(); ++i) {
    tr.pairs.push_back(delta_epsilon(chain, h, i));
    if (tr.pairs.back().delta == 0) break;
  }
  auto eps_key = [](const CharacterPair& c) { return c.epsilon_infinite() ? std::numeric_limits<long>::max() : long(c.epsilon); };
  for (size_t k = 0; k + 1 < tr.pairs.size(); ++k) {
    const CharacterPair& a = tr.pairs[k];
    const CharacterPair& b = tr.pairs[k + 1];
    int i = a.level;
    int alpha = chain.level(i + 1).alpha;
    auto add = [&](Check c) { tr.checks.push_back({i, std::move(c)}); };

    Check weighted = make_check("alpha_delta");
    if (alpha * b.delta > a.delta) fail(weighted, std::to_string(alpha) + "*" + std::to_string(b.delta) + " > " + std::to_string(a.delta));
    add(weighted);

    Check lex = make_check("lex_monotone");
    if (std::make_pair(long(b.delta), eps_key(b)) > std::make_pair(long(a.delta), eps_key(a))) fail(lex, "characters increased");
    add(lex);

    Check vertex = make_check("vertex_order");
    Check split = make_check("delta_split");
    if (a.value.is_infinite() || !a.characteristic) {
      vertex.applicable = split.applicable = false;
    } else {
      if (a.characteristic->first < b.delta) fail(vertex, "characteristic index below pivotal index");
      NextSupport ns = next_support(chain, h, i, a.value);
      int j0 = ns.S.back();
      int inner = delta_epsilon(chain, ns.coeffs[size_t(j0)], i).delta;
      if (alpha * j0 + inner != a.delta) fail(split, "delta " + std::to_string(a.delta) + " != " + std::to_string(alpha * j0 + inner));
    }
    add(vertex);
    add(split);

    Check stable_eps = make_check("epsilon_stable");
    Check stable_in = make_check("initial_stable");
    Check stable_alpha = make_check("alpha_stable");
    if (b.delta != a.delta || a.delta == 0) {
      stable_eps.applicable = stable_in.applicable = stable_alpha.applicable = false;
    } else {
      if (eps_key(b) > eps_key(a)) fail(stable_eps, "epsilon increased");
      if (alpha != 1) fail(stable_alpha, "alpha is " + std::to_string(alpha));
      Poly di = chain.expand(h, i).coeffs[size_t(a.delta)];
      Poly dn = chain.expand(h, i + 1).coeffs[size_t(a.delta)];
      Value v = chain.truncation(di, i);
      if (!(chain.truncation(di - dn, i) > v)) fail(stable_in, "leading coefficients differ in initial form");
    }
    add(stable_eps);
    add(stable_in);
    add(stable_alpha);

    Check eps_value = make_check("epsilon_value");
    if (b.delta != a.delta || b.epsilon != a.epsilon || a.epsilon_infinite() || a.delta == 0) {
      eps_value.applicable = false;
    } else {
      Poly di = chain.expand(h, i).coeffs[size_t(a.epsilon)];
      Poly dn = chain.expand(h, i + 1).coeffs[size_t(a.epsilon)];
      if (chain.truncation(di, i) != chain.truncation(dn, i)) fail(eps_value, "coefficient values differ");
    }
    add(eps_value);
  }
  return tr;
}

std::vector<Check> chain_derivative_checks(const KeyChain& chain) {
  std::vector<Check> out;
  Check powers = make_check("b_is_p_power");
  Check nonneg = make_check("derivatives_nonnegative");
  Check increasing = make_check("ratio_increasing");
  Check alpha_one = make_check("b_non_increasing_alpha_one");
  std::optional<EffectiveBound> prev;
  for (int i = 1; i <= chain.length(); ++i) {
    if (chain.level(i).beta.is_infinite()) break;
    EffectiveBound B = effective_bound(chain, i);
    if (!B.p_powers || B.e < 0) fail(powers, "level " + std::to_string(i));
    if (!B.derivatives_nonnegative) fail(nonneg, "level " + std::to_string(i));
    if (prev) {
      if (!(B.ratio > prev->ratio)) fail(increasing, "level " + std::to_string(i));
      if (chain.level(i).alpha == 1 && B.b > prev->b) fail(alpha_one, "level " + std::to_string(i));
    }
    prev = B;
  }
  out = {powers, nonneg, increasing, alpha_one};
  return out;
}

}  // namespace keypoly
