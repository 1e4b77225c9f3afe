#include "keypoly/limits.hpp"

#include <algorithm>
#include <tuple>

#include "keypoly/error.hpp"

namespace keypoly {

namespace {

long ipow(uint64_t p, int e) {
  long r = 1;
  for (int k = 0; k < e; ++k) r *= long(p);
  return r;
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

std::string lv(int i) { return "level " + std::to_string(i); }

Value margin(const Value& plus, const Value& value) {
  if (plus.is_infinite() || value.is_infinite()) return Value::infinity();
  return plus - value;
}

Poly coeff_at(const StandardExpansion& e, int j, const FieldSpec& spec) {
  if (j < 0 || j >= int(e.coeffs.size())) return Poly(spec);
  return e.coeffs[size_t(j)];
}

int tail_base(const KeyChain& chain) {
  int base = chain.length();
  while (base > 1 && chain.level(base).alpha == 1) --base;
  return base;
}

// Levels [first, top] covered by a window of w levels inside the tail.
int window_start(const StallTrace& trace, int window) {
  int levels = trace.top() - trace.base + 1;
  if (window <= 0 || window > levels) return trace.base;
  return trace.top() - window + 1;
}

bool is_one(const Poly& c) { return c.degree() == 0 && c.coeffs()[0].is_one(); }

}  // namespace

StallTrace stall_trace(const KeyChain& chain, const Poly& h, std::optional<Value> bound) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "stall trace of zero");
  if (chain.length() < 2) throw Error(ErrorKind::InvalidInput, "a stall trace needs at least two levels");
  if (chain.top().beta.is_infinite()) throw Error(ErrorKind::InvalidInput, "the chain ends with an infinite value");
  StallTrace tr;
  tr.chain = chain;
  tr.probe = h;
  tr.base = tail_base(chain);
  if (tr.base == chain.length()) throw Error(ErrorKind::InvalidInput, "the chain does not end with an alpha = 1 step");
  tr.bound_declared = bound.has_value();
  tr.bound = bound ? *bound : chain.top().beta;
  for (int i = tr.base; i < chain.length(); ++i) tr.z.push_back(chain.level(i + 1).Q - chain.level(i).Q);
  for (int i = tr.base; i <= chain.length(); ++i) {
    CharacterPair c = delta_epsilon(chain, h, i);
    tr.steps.push_back({i, chain.level(i).beta, c.delta, c.epsilon, c.value, c.plus});
  }

  Check inc = make_check("values_increasing");
  Check below = make_check("values_below_bound");
  Check gap = make_check("margin_non_decreasing");
  below.applicable = tr.bound_declared;
  gap.applicable = false;
  for (size_t k = 0; k < tr.steps.size(); ++k) {
    const StallStep& s = tr.steps[k];
    if (tr.bound_declared && !(s.beta < tr.bound)) fail(below, lv(s.level) + " value " + s.beta.str());
    if (k == 0) continue;
    const StallStep& r = tr.steps[k - 1];
    if (!(r.beta < s.beta)) fail(inc, lv(s.level));
    if (r.delta == s.delta && s.delta > 0) {
      gap.applicable = true;
      if (margin(s.plus, s.value) < margin(r.plus, r.value)) fail(gap, lv(s.level));
    }
  }
  tr.checks = {inc, below, gap};
  return tr;
}

StableDelta stable_delta(const StallTrace& trace, int window) {
  int levels = int(trace.steps.size());
  if (window > levels)
    throw Error(ErrorKind::NotStabilized, "window of " + std::to_string(window) + " exceeds the " + std::to_string(levels) + " traced levels");
  int first = window_start(trace, window);
  StableDelta sd;
  sd.window = trace.top() - first + 1;
  sd.delta = trace.step(first).delta;
  for (int i = first + 1; i <= trace.top(); ++i)
    if (trace.step(i).delta != sd.delta)
      throw Error(ErrorKind::NotStabilized, "delta changes from " + std::to_string(sd.delta) + " to " +
                                                std::to_string(trace.step(i).delta) + " at " + lv(i));
  if (sd.delta < 1) throw Error(ErrorKind::NotStabilized, "the probe has delta 0 and is not defective");
  uint64_t p = trace.chain.spec().p_power_base();
  if (is_p_power(sd.delta, p)) {
    sd.e = p <= 1 ? 0 : p_adic_order(sd.delta, p);
  } else {
    sd.violation = "stable delta " + std::to_string(sd.delta) + " is not a power of " + std::to_string(p) +
                   "; the probe is not of minimal degree or the trace is inconsistent";
  }
  return sd;
}

int congruence_span(const StallTrace& trace) {
  uint64_t p = trace.chain.spec().p_power_base();
  int delta = trace.step(trace.base).delta;
  if (delta < 1) throw Error(ErrorKind::NotStabilized, "the probe has delta 0 at the base level");
  return p <= 1 ? 1 : int(ipow(p, p_adic_order(delta, p)));
}

CongruenceReport coefficient_congruence(const StallTrace& trace, int v, int from, int i, const Oracle* oracle) {
  if (from <= trace.base || from > i || i >= trace.top())
    throw Error(ErrorKind::InvalidInput, "need base < from <= i < top, got from=" + std::to_string(from) + " i=" + std::to_string(i));
  int delta = trace.step(trace.base).delta;
  if (trace.step(i + 1).delta != delta)
    throw Error(ErrorKind::NotStabilized, "delta at " + lv(i + 1) + " differs from the base value " + std::to_string(delta));
  int span = congruence_span(trace);
  if (v < delta - span || v > delta)
    throw Error(ErrorKind::InvalidInput, "v must lie in [" + std::to_string(delta - span) + ", " + std::to_string(delta) + "]");
  const KeyChain& chain = trace.chain;
  const FieldSpec& spec = chain.spec();
  StandardExpansion lo = chain.expand(trace.probe, from);
  StandardExpansion hi = chain.expand(trace.probe, i);
  Poly Z = chain.level(i).Q - chain.level(from).Q;
  Poly rhs(spec), Zj = Poly::constant(FieldElement::one(spec));
  for (int j = 0; j <= delta - v; ++j) {
    Poly d = coeff_at(lo, v + j, spec);
    if (!d.is_zero()) {
      Rational c(binomial(v + j, j));
      if (j % 2) c = -c;
      rhs += d * Zj * FieldElement(spec, c);
    }
    Zj *= Z;
  }
  CongruenceReport r;
  r.v = v;
  r.from = from;
  r.level = i;
  r.difference = coeff_at(hi, v, spec) - rhs;
  r.value = chain.top_truncation(r.difference);
  if (oracle && !r.difference.is_zero()) {
    try {
      r.value = oracle->evaluate(r.difference);
      r.from_oracle = true;
    } catch (const Error& e) {
      if (!e.is_resource()) throw;
    }
  }
  const StallStep& s = trace.step(from);
  Value lift = trace.step(i).beta - trace.step(trace.base).beta;
  r.threshold = (s.value - s.beta * Rational(v)) + min(margin(s.plus, s.value), lift);
  r.holds = r.value >= r.threshold;
  r.strict = r.value > r.threshold;
  return r;
}

std::vector<CongruenceReport> coefficient_congruences(const StallTrace& trace, int v, const Oracle* oracle) {
  std::vector<CongruenceReport> out;
  int delta = trace.step(trace.base).delta;
  for (int from = trace.base + 1; from < trace.top(); ++from)
    for (int i = from; i < trace.top(); ++i)
      if (trace.step(i + 1).delta == delta) out.push_back(coefficient_congruence(trace, v, from, i, oracle));
  return out;
}

bool gap_condition(const StallTrace& trace, int i, const Value& bound, int e0) {
  const KeyChain& chain = trace.chain;
  long pe = ipow(chain.spec().p_power_base(), e0);
  Value below = trace.base == 1 ? Value(0) : chain.level(trace.base - 1).beta * Rational(chain.level(trace.base).alpha);
  return chain.level(i).beta - below > (bound - chain.level(i).beta) * Rational(2 * pe);
}

const MonomialClass* BadMonomialReport::entry(int j) const {
  for (const auto& e : entries)
    if (e.j == j) return &e;
  return nullptr;
}

BadMonomialReport classify_bad_monomials(const Poly& f, const StallTrace& trace, int i, const Value& bound, int e0) {
  if (i < trace.base || i > trace.top()) throw Error(ErrorKind::InvalidInput, lv(i) + " is outside the trace");
  if (!gap_condition(trace, i, bound, e0))
    throw Error(ErrorKind::GapConditionUnmet, "value at " + lv(i) + " is too far below the bound " + bound.str());
  const KeyChain& chain = trace.chain;
  uint64_t p = chain.spec().p_power_base();
  BadMonomialReport rep;
  rep.level = i;
  rep.e0 = e0;
  rep.degree = ipow(p, e0);
  rep.bound = bound;
  const Value& beta = chain.level(i).beta;
  rep.line = bound * Rational(2 * rep.degree) - beta * Rational(rep.degree);
  StandardExpansion ex = chain.expand(f, i);
  std::vector<Value> vals = chain.coefficient_values(ex);
  std::optional<std::pair<Value, int>> lex;
  for (int j = 1; j < rep.degree && j < int(ex.coeffs.size()); ++j) {
    if (ex.coeffs[size_t(j)].is_zero()) continue;
    MonomialClass m;
    m.j = j;
    m.value = vals[size_t(j)];
    m.weight = m.value + bound * Rational(j);
    Value critical = bound * Rational(rep.degree - j);
    m.below_line = m.weight < rep.line;
    m.removable = !m.below_line;
    m.below_critical = m.value < critical;
    m.not_p_power = !is_p_power(j, p);
    m.above_critical = m.value > critical;
    m.bad = m.below_line && (m.below_critical || m.not_p_power || m.above_critical);
    if (m.bad) {
      rep.greatest = j;
      std::pair<Value, int> key{m.value + beta * Rational(j), -j};
      if (!lex || key < *lex) lex = key;
    }
    rep.entries.push_back(m);
  }
  if (lex) rep.lex_min = -lex->second;
  return rep;
}

Check exponent_divisibility_check(const Poly& f, const StallTrace& trace, int e, int window) {
  Check c = make_check("exponent_divisibility");
  if (e < 0) throw Error(ErrorKind::NotStabilized, "no p-power exponent for the stable delta");
  const KeyChain& chain = trace.chain;
  uint64_t p = chain.spec().p_power_base();
  if (e == 0 || p <= 1) {
    c.detail = "exponent 0: nothing to divide";
    return c;
  }
  long m = ipow(p, e);
  for (int t = window_start(trace, window); t <= trace.top(); ++t) {
    StandardExpansion ex = chain.expand(f, t);
    for (size_t j = 1; j < ex.coeffs.size(); ++j)
      if (!ex.coeffs[j].is_zero() && long(j) % m != 0) {
        fail(c, "exponent " + std::to_string(j) + " at " + lv(t) + " is not divisible by " + std::to_string(m));
        return c;
      }
  }
  return c;
}

std::vector<Check> bad_monomial_monotonicity(const Poly& f, const StallTrace& trace, int from, int e0) {
  Check greatest = make_check("greatest_bad_non_increasing");
  Check lexmin = make_check("lex_min_bad_non_increasing");
  Check initial = make_check("bad_initial_stable");
  Check online = make_check("online_set_invariant");
  greatest.applicable = lexmin.applicable = initial.applicable = false;
  const KeyChain& chain = trace.chain;
  std::optional<BadMonomialReport> prev;
  std::optional<std::map<int, Value>> online_first;
  for (int i = from; i <= trace.top(); ++i) {
    BadMonomialReport cur = classify_bad_monomials(f, trace, i, trace.bound, e0);
    std::map<int, Value> on;
    for (const auto& m : cur.entries)
      if (!m.below_critical && !m.above_critical) on[m.j] = m.value;
    if (!online_first) {
      online_first = on;
    } else if (on != *online_first) {
      fail(online, "on-line coefficients change at " + lv(i));
    }
    if (prev) {
      if (cur.greatest) {
        greatest.applicable = lexmin.applicable = true;
        if (!prev->greatest || *cur.greatest > *prev->greatest) fail(greatest, "increase at " + lv(i));
        if (!prev->lex_min || *cur.lex_min > *prev->lex_min) fail(lexmin, "increase at " + lv(i));
      }
      StandardExpansion a = chain.expand(f, i - 1), b = chain.expand(f, i);
      for (auto j : {prev->greatest, prev->lex_min}) {
        if (!j) continue;
        initial.applicable = true;
        Poly old = coeff_at(a, *j, chain.spec());
        Poly diff = coeff_at(b, *j, chain.spec()) - old;
        if (!(chain.top_truncation(diff) > chain.top_truncation(old)))
          fail(initial, "coefficient " + std::to_string(*j) + " moves at " + lv(i));
      }
    }
    prev = cur;
  }
  return {greatest, lexmin, initial, online};
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  const FieldSpec& spec = m.spec();
  Poly r0 = m, r1 = evaluate_mod(a, m);
  Poly s0(spec), s1 = Poly::constant(FieldElement::one(spec));
  while (true) {
    if (r1.is_zero()) throw Error(ErrorKind::NonUnitValue, a.str() + " is not invertible modulo " + m.str());
    if (r1.degree() == 0) return evaluate_mod(s1 * r1.leading().inverse(), m);
    FieldElement inv = r1.leading().inverse();
    Poly q, r;
    euclid_div(r0, r1 * inv, q, r);
    Poly s2 = s0 - q * inv * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
}

namespace {

LimitCandidate finish_candidate(const Poly& f, const StallTrace& trace, int i, int e0) {
  const KeyChain& chain = trace.chain;
  uint64_t p = chain.spec().p_power_base();
  LimitCandidate c;
  c.base_level = i;
  c.e0 = e0;
  c.degree = ipow(p, e0);
  c.bound = trace.bound;
  c.poly = f;
  StandardExpansion ex = chain.expand(f, i);
  std::vector<Value> vals = chain.coefficient_values(ex);
  for (size_t j = 0; j < ex.coeffs.size(); ++j) {
    if (ex.coeffs[j].is_zero()) continue;
    c.coeffs[int(j)] = ex.coeffs[j];
    c.coeff_values[int(j)] = vals[j];
  }
  c.weakly_affine = make_check("weakly_affine");
  if (int(ex.coeffs.size()) != c.degree + 1 || !is_one(ex.coeffs.back()))
    fail(c.weakly_affine, "not monic of degree " + std::to_string(c.degree) + " in Q_" + std::to_string(i));
  for (const auto& [j, _] : c.coeffs)
    if (j > 0 && !is_p_power(j, p)) fail(c.weakly_affine, "exponent " + std::to_string(j) + " is not a power of p");
  c.critical_line = make_check("critical_line");
  int online = 0;
  for (const auto& [j, v] : c.coeff_values) {
    if (j == 0 || j >= c.degree) continue;
    ++online;
    Value want = trace.bound * Rational(c.degree - j);
    if (v != want) fail(c.critical_line, "coefficient " + std::to_string(j) + " has value " + v.str() + ", expected " + want.str());
  }
  if (online == 0) c.critical_line.detail = "no intermediate coefficients";
  c.exponent_divisibility = exponent_divisibility_check(f, trace, e0);
  if (trace.base != 1 || chain.spec().field_char() != chain.spec().residue_char()) {
    c.exponent_divisibility.applicable = false;
    c.exponent_divisibility.detail = "needs base level 1 and equal characteristic";
  }
  return c;
}

}  // namespace

LimitResult reduce_to_weakly_affine(const Poly& f0, const StallTrace& trace, int i, int e0) {
  const KeyChain& chain = trace.chain;
  const FieldSpec& spec = chain.spec();
  long pe = ipow(spec.p_power_base(), e0);
  StandardExpansion ex0 = chain.expand(f0, i);
  if (int(ex0.coeffs.size()) != pe + 1 || !is_one(ex0.coeffs.back()))
    throw Error(ErrorKind::InvalidInput, "f must be monic of degree " + std::to_string(pe) + " in Q_" + std::to_string(i));
  LimitResult res;
  res.report.probe = trace.probe;
  res.report.start_level = i;
  Poly f = f0;
  int cur = i;
  const Value& bound = trace.bound;
  auto line_at = [&](int t) { return bound * Rational(2 * pe) - chain.level(t).beta * Rational(pe); };

  auto strip = [&](const std::string& action, bool strict) {
    BadMonomialReport rep = classify_bad_monomials(f, trace, cur, bound, e0);
    StandardExpansion ex = chain.expand(f, cur);
    for (const auto& m : rep.entries) {
      if (!m.removable || (strict && m.weight == rep.line)) continue;
      f -= ex.coeffs[size_t(m.j)] * chain.level(cur).Q.pow(m.j);
      res.report.steps.push_back({action, cur, m.j, m.value, "weight " + m.weight.str() + " against line " + rep.line.str()});
    }
  };

  Check not_below = make_check("bad_indices_not_below_critical");
  Check above = make_check("greatest_bad_above_critical");
  not_below.applicable = above.applicable = false;
  strip("strip", false);
  int guard = int(pe) * (trace.top() - i + 2);
  while (true) {
    BadMonomialReport rep = classify_bad_monomials(f, trace, cur, bound, e0);
    if (!rep.greatest) break;
    if (--guard < 0) throw Error(ErrorKind::BudgetExhausted, "bad monomial removal does not terminate inside the trace");
    int j = *rep.greatest;
    not_below.applicable = above.applicable = true;
    for (int k : {*rep.greatest, *rep.lex_min})
      if (rep.entry(k)->below_critical) fail(not_below, "index " + std::to_string(k) + " at " + lv(cur));
    if (!rep.entry(j)->above_critical) fail(above, "index " + std::to_string(j) + " at " + lv(cur));
    const Value& a = rep.entry(j)->value;
    int target = -1;
    for (int t = cur; t <= trace.top() && target < 0; ++t)
      if (a + chain.level(t).beta * Rational(j) > line_at(t)) target = t;
    if (target < 0)
      throw Error(ErrorKind::BudgetExhausted, "no traced level lifts bad index " + std::to_string(j) + " above the line");
    StandardExpansion ex = chain.expand(f, target);
    Poly coeff = coeff_at(ex, j, spec);
    f -= coeff * chain.level(target).Q.pow(j);
    res.report.steps.push_back({"remove_bad", target, j, chain.top_truncation(coeff), "found bad at " + lv(cur)});
    cur = target;
  }
  strip("remove_above_line", false);
  res.report.checks.push_back(not_below);
  res.report.checks.push_back(above);
  res.candidate = finish_candidate(f, trace, cur, e0);
  Check deg = make_check("degree_at_least_p");
  if (pe < long(spec.p_power_base()) || pe < 2) fail(deg, "degree " + std::to_string(pe));
  res.report.checks.push_back(deg);
  return res;
}

LimitResult build_limit_candidate(const KeyChain& chain, const Oracle& oracle, const std::vector<Poly>& probes,
                                  const LimitOptions& options) {
  const FieldSpec& spec = chain.spec();
  uint64_t p = spec.p_power_base();
  std::vector<std::string> violations;
  if (p <= 1) {
    std::string why = "residue characteristic 0: alpha = 1 tails have unbounded values, so no limit step applies";
    if (!options.force) throw Error(ErrorKind::InvalidInput, why);
    violations.push_back(why);
  }
  if (chain.length() < 2 || chain.top().beta.is_infinite() || tail_base(chain) == chain.length())
    throw Error(ErrorKind::InvalidInput, "the chain does not end with a finite alpha = 1 tail");
  int base = tail_base(chain);
  int levels = chain.length() - base + 1;
  int window = options.window <= 0 || options.window > levels ? levels : options.window;
  int first = chain.length() - window + 1;

  std::optional<Poly> chosen;
  for (const Poly& raw : probes) {
    if (raw.degree() < 1 || raw.degree() > options.degree_cap) continue;
    if (chosen && raw.degree() >= chosen->degree()) continue;
    Poly h = raw * raw.leading().inverse();
    Value target = oracle.evaluate(h);
    bool defective = true;
    for (int t = first; t <= chain.length() && defective; ++t)
      if (!(chain.truncation(h, t) < target)) defective = false;
    if (defective) chosen = h;
  }
  if (!chosen)
    throw Error(ErrorKind::NoDefectiveProbe, "no probe stays defective over the top " + std::to_string(window) + " levels");

  std::optional<Value> bound = options.bound ? options.bound : oracle.declared_bound();
  StallTrace trace = stall_trace(chain, *chosen, bound);
  if (!trace.bound_declared) violations.push_back("no declared bound; the top value " + trace.bound.str() + " is used");
  StableDelta sd = stable_delta(trace, window);
  if (sd.violation) violations.push_back(*sd.violation);
  if (sd.e < 0) throw Error(ErrorKind::NotStabilized, *sd.violation);
  if (sd.e == 0 && p > 1) {
    std::string why = "stable delta 1 forces unbounded values";
    if (!options.force) throw Error(ErrorKind::InvalidInput, why);
    violations.push_back(why);
  }
  int e0 = sd.e;
  int delta = sd.delta;

  LimitReport rep;
  rep.probe = *chosen;
  rep.delta = delta;
  rep.window = window;
  rep.normalization_level = base;
  Poly f = *chosen;
  {
    StandardExpansion ex = chain.expand(f, base);
    Poly lead = coeff_at(ex, delta, spec);
    if (!is_one(lead)) {
      Poly inv = inverse_mod(lead, chain.level(base).Q);
      f = inv * f;
      rep.steps.push_back({"normalize", base, delta, chain.top_truncation(lead), "multiplier " + inv.str()});
    }
  }

  // first level past the base where the tail above delta no longer matters
  int l1 = -1;
  for (int t = base + 1; t <= chain.length() && l1 < 0; ++t) {
    CharacterPair c = delta_epsilon(chain, f, t);
    Value theta = min(margin(c.plus, c.value), chain.level(t).beta - chain.level(base).beta);
    if ((trace.bound - chain.level(t).beta) * Rational(delta) < theta) l1 = t;
  }
  if (l1 < 0) throw Error(ErrorKind::BudgetExhausted, "no traced level separates the leading coefficient from the bound");
  rep.truncation_level = l1;
  {
    StandardExpansion ex = chain.expand(f, l1);
    const Poly& Q = chain.level(l1).Q;
    Poly g = Q.pow(delta);
    for (int j = 0; j < delta; ++j) {
      Poly a = coeff_at(ex, j, spec);
      if (!a.is_zero()) g += a * Q.pow(j);
    }
    if (!(g == f)) rep.steps.push_back({"truncate", l1, delta, Value(0), "dropped " + std::to_string(int(ex.coeffs.size()) - 1 - delta) + " higher terms and the leading tail"});
    f = g;
  }

  int i0 = -1;
  for (int t = l1; t <= chain.length() && i0 < 0; ++t)
    if (gap_condition(trace, t, trace.bound, e0)) i0 = t;
  if (i0 < 0) throw Error(ErrorKind::BudgetExhausted, "no traced level is close enough to the bound " + trace.bound.str());

  for (const auto& c : bad_monomial_monotonicity(f, trace, i0, e0)) rep.checks.push_back(c);
  LimitResult res = reduce_to_weakly_affine(f, trace, i0, e0);
  rep.start_level = i0;
  for (auto& s : res.report.steps) rep.steps.push_back(s);
  for (auto& c : res.report.checks) rep.checks.push_back(c);
  for (auto& c : trace.checks) rep.checks.push_back(c);

  const LimitCandidate& cand = res.candidate;
  Check value = make_check("candidate_value_above_bound");
  Check defect = make_check("candidate_defective");
  try {
    Value target = oracle.evaluate(cand.poly);
    if (target < trace.bound * Rational(cand.degree)) fail(value, "value " + target.str());
    for (int t = first; t <= chain.length(); ++t)
      if (!(chain.truncation(cand.poly, t) < target)) fail(defect, "matched at " + lv(t));
  } catch (const Error& e) {
    if (!e.is_resource()) throw;
    value.applicable = defect.applicable = false;
    value.detail = defect.detail = e.what();
  }
  rep.checks.push_back(value);
  rep.checks.push_back(defect);
  rep.violations = violations;
  res.report = rep;
  return res;
}

}  // namespace keypoly
