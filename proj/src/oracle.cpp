#include "keypoly/oracle.hpp"

#include <numeric>
#include <random>

#include "keypoly/error.hpp"

namespace keypoly {

// ---- Eisenstein roots

EisensteinRootOracle::EisensteinRootOracle(Poly min_poly, long e) : m_(std::move(min_poly)), e_(e) {
  if (e_ < 1) throw Error(ErrorKind::InvalidInput, "ramification must be positive");
  if (m_.degree() < 1 || !m_.is_monic()) throw Error(ErrorKind::InvalidInput, "defining polynomial must be monic of positive degree");
  // the exponents i/e of 1, theta, ..., theta^(deg-1) must be distinct mod 1
  if (m_.degree() > e_) throw Error(ErrorKind::InvalidInput, "degree of the defining polynomial exceeds the ramification");
}

Value EisensteinRootOracle::evaluate(const Poly& f) const {
  if (f.is_zero()) return Value::infinity();
  Poly r = evaluate_mod(f, m_);
  Value best = Value::infinity();
  for (int i = 0; i <= r.degree(); ++i) {
    if (r.coeffs()[i].is_zero()) continue;
    best = min(best, val(r.coeffs()[i]) + Value(Rational(i, e_)));
  }
  return best;
}

// ---- truncation of field elements

namespace {

long ceil_long(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_si();
}

Integer pow_int(uint64_t p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

FieldElement substitute_power(const FieldElement& c, long n) {
  if (n == 1 || c.spec().nvars() != 1) return c;
  auto scale = [&](const MPoly& f) {
    MPoly r(f.prime(), 1);
    for (const auto& [m, s] : f.terms()) r.add_term({m.first * n, 0}, s);
    return r;
  };
  return FieldElement::fraction(c.spec(), scale(c.num()), scale(c.den()));
}

Poly substitute_power(const Poly& f, long n) {
  if (n == 1) return f;
  std::vector<FieldElement> c;
  for (const auto& a : f.coeffs()) c.push_back(substitute_power(a, n));
  return Poly(f.spec(), std::move(c));
}

}  // namespace

FieldElement truncate_element(const FieldElement& a, const Value& w) {
  const FieldSpec& spec = a.spec();
  if (a.is_zero() || w.is_infinite() || spec.kind == BaseKind::FpUV) return a;
  Value v = val(a);
  long W = ceil_long(w.a());
  long vv = v.a().get_num().get_si();
  if (vv >= W) return FieldElement::zero(spec);
  long m = W - vv;
  if (spec.kind == BaseKind::Qp) {
    Integer pv = pow_int(spec.p, std::labs(vv));
    Rational unit = vv >= 0 ? Rational(a.rational() / pv) : Rational(a.rational() * pv);
    Integer mod = pow_int(spec.p, m), inv, r;
    Integer d = unit.get_den();
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
    r = Integer(unit.get_num() * inv);
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return FieldElement(spec, vv >= 0 ? Rational(r * pv) : Rational(r) / Rational(pv));
  }
  // t-adic expansion of num/den
  long jn = a.num().min_exponents().first, jd = a.den().min_exponents().first;
  uint64_t cp = spec.coeff_char();
  std::vector<Scalar> N(size_t(m), Scalar::zero(cp)), D(size_t(m), Scalar::zero(cp));
  for (const auto& [e, s] : a.num().terms())
    if (e.first - jn < m) N[size_t(e.first - jn)] = s;
  for (const auto& [e, s] : a.den().terms())
    if (e.first - jd < m) D[size_t(e.first - jd)] = s;
  Scalar d0inv = D[0].inverse();
  std::vector<Scalar> S(size_t(m), Scalar::zero(cp));
  for (long i = 0; i < m; ++i) {
    Scalar acc = N[size_t(i)];
    for (long k = 1; k <= i; ++k) acc -= D[size_t(k)] * S[size_t(i - k)];
    S[size_t(i)] = acc * d0inv;
  }
  MPoly num(cp, 1), den = MPoly::constant(cp, 1, Scalar::one(cp));
  long shift = std::min(vv, 0L);
  for (long i = 0; i < m; ++i)
    if (!S[size_t(i)].is_zero()) num.add_term({vv + i - shift, 0}, S[size_t(i)]);
  if (shift < 0) den = MPoly::monomial(cp, 1, {-shift, 0}, Scalar::one(cp));
  return FieldElement::fraction(spec, num, den);
}

// ---- sources

ListSource::ListSource(const FieldSpec& spec, std::vector<SeriesTerm> terms, Value frontier)
    : spec_(spec), terms_(std::move(terms)), frontier_(std::move(frontier)) {
  Integer l = 1;
  auto absorb = [&](const Value& v) {
    if (v.is_infinite()) return;
    if (spec_.kind == BaseKind::FpUV) {
      if (v.a().get_den() != 1 || v.b().get_den() != 1)
        throw Error(ErrorKind::InvalidInput, "series exponent " + v.str() + " is not in the value group");
      return;
    }
    if (!v.is_rational()) throw Error(ErrorKind::InvalidInput, "series exponent " + v.str() + " is not rational");
    if (v.a().get_den() != 1 && spec_.kind == BaseKind::Qp)
      throw Error(ErrorKind::InvalidInput, "ramified p-adic series are not supported; use an eisenstein oracle");
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.a().get_den_mpz_t());
  };
  for (const auto& t : terms_) absorb(t.exponent);
  absorb(frontier_);
  ram_ = l.get_si();
  theta_ = FieldElement::zero(spec_);
  for (const auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    if (!(t.exponent > Value(0))) throw Error(ErrorKind::InvalidInput, "series exponents must be positive");
    if (!frontier_.is_infinite() && !(t.exponent < frontier_))
      throw Error(ErrorKind::InvalidInput, "series term at or beyond the frontier");
    theta_ += lift_residue(spec_, t.coeff) * FieldElement::monomial(spec_, t.exponent * Rational(ram_));
  }
}

std::optional<Approximation> ListSource::approximation(int n) const {
  if (n > 0) return std::nullopt;
  return Approximation{theta_, frontier_.is_infinite() ? frontier_ : frontier_ * Rational(ram_)};
}

HenselSource::HenselSource(Poly g, FieldElement start, int max_steps)
    : g_(std::move(g)), start_(std::move(start)), max_steps_(max_steps) {
  if (g_.degree() < 1) throw Error(ErrorKind::InvalidInput, "hensel polynomial must have positive degree");
  g_ = g_ * g_.leading().inverse();
  if (g_.spec().kind == BaseKind::FpUV) throw Error(ErrorKind::InvalidInput, "hensel roots are not supported over F_p(u,v)");
  dg_ = hasse_derivative(g_, 1);
  Value gv = val(evaluate(g_, start_));
  Value dv = val(evaluate(dg_, start_));
  if (dv.is_infinite() || !(gv > dv * Rational(2)))
    throw Error(ErrorKind::InvalidInput, "starting point does not satisfy the Hensel condition");
}

std::optional<Approximation> HenselSource::approximation(int n) const {
  if (n > max_steps_) return std::nullopt;
  std::lock_guard<std::mutex> lock(mu_);
  while (int(cache_.size()) <= n) {
    FieldElement th = cache_.empty() ? start_ : cache_.back().theta;
    if (!cache_.empty()) {
      if (cache_.back().frontier.is_infinite()) return cache_.back();
      FieldElement gvn = evaluate(g_, th), dvn = evaluate(dg_, th);
      FieldElement next = th - gvn / dvn;
      Value w = cache_.back().frontier * Rational(2) - val(dvn) + Value(1);
      th = truncate_element(next, w);
    }
    Value gv = val(evaluate(g_, th)), dv = val(evaluate(dg_, th));
    if (!gv.is_infinite() && !(gv > dv * Rational(2)))
      throw Error(ErrorKind::InvalidInput, "hensel iteration left the convergence region");
    cache_.push_back({th, gv.is_infinite() ? gv : gv - dv});
  }
  return cache_[size_t(n)];
}

Sqrt2ConvergentSource::Sqrt2ConvergentSource(const FieldSpec& spec, int max_terms) : spec_(spec), max_terms_(max_terms) {
  if (spec.kind != BaseKind::FpUV) throw Error(ErrorKind::InvalidInput, "convergent series need the F_p(u,v) base field");
  Integer p = 1, q = 1;
  for (int k = 0; k <= max_terms_; ++k) {
    pq_.push_back({p, q});
    Integer np = 3 * p + 4 * q, nq = 2 * p + 3 * q;
    p = np;
    q = nq;
  }
}

Value Sqrt2ConvergentSource::term_value(int k) const {
  const auto& [p, q] = pq_.at(size_t(k));
  return Value(Rational(1 + p), Rational(-q));
}

FieldElement Sqrt2ConvergentSource::term(int k) const { return FieldElement::monomial(spec_, term_value(k)); }

std::optional<Approximation> Sqrt2ConvergentSource::approximation(int n) const {
  if (n + 1 >= max_terms_) return std::nullopt;
  FieldElement th = FieldElement::zero(spec_);
  for (int k = 0; k <= n; ++k) th += term(k);
  return Approximation{th, term_value(n + 1)};
}

// ---- series oracle

SeriesOracle::SeriesOracle(const FieldSpec& spec, SourcePtr source, std::string label)
    : spec_(spec), source_(std::move(source)), label_(std::move(label)) {}

Value SeriesOracle::evaluate(const Poly& f) const {
  if (f.is_zero()) return Value::infinity();
  if (f.degree() == 0) return val(f.coeffs()[0]);
  if (auto h = std::dynamic_pointer_cast<const HenselSource>(source_)) {
    Poly q, r;
    euclid_div(f, h->min_poly(), q, r);
    if (r.is_zero()) return Value::infinity();
  }
  long ram = source_->ramification();
  Poly fs = substitute_power(f, ram);
  std::vector<Poly> derivs;
  for (int i = 1; i <= fs.degree(); ++i) derivs.push_back(hasse_derivative(fs, i));
  Value reached;
  for (int n = 0;; ++n) {
    auto ap = source_->approximation(n);
    if (!ap) {
      throw Error(ErrorKind::PrecisionExhausted,
                  "series precision exhausted at frontier " + (reached / Rational(ram)).str() + " for " + f.str());
    }
    reached = ap->frontier;
    Value v = val(keypoly::evaluate(fs, ap->theta));
    if (ap->frontier.is_infinite()) return v / Rational(ram);
    Value bound = Value::infinity();
    for (size_t i = 0; i < derivs.size(); ++i) {
      Value dv = val(keypoly::evaluate(derivs[i], ap->theta));
      if (dv.is_infinite()) continue;
      bound = min(bound, dv + ap->frontier * Rational(long(i + 1)));
    }
    if (v < bound) return v / Rational(ram);
  }
}

// ---- scripted limit

ScriptedLimitOracle::ScriptedLimitOracle(OraclePtr inner, Poly limit, Value value)
    : inner_(std::move(inner)), limit_(std::move(limit)), value_(std::move(value)) {
  if (!limit_.is_monic() || limit_.degree() < 1) throw Error(ErrorKind::InvalidInput, "limit polynomial must be monic");
}

Value ScriptedLimitOracle::evaluate(const Poly& f) const {
  Value best = Value::infinity();
  Poly cur = f;
  for (long j = 0; !cur.is_zero(); ++j) {
    Poly q, r;
    euclid_div(cur, limit_, q, r);
    if (!r.is_zero()) best = min(best, inner_->evaluate(r) + value_ * Rational(j));
    cur = q;
  }
  return best;
}

// ---- self test

AxiomReport axioms_selftest(const Oracle& oracle, int samples, uint64_t seed) {
  const FieldSpec& spec = oracle.field();
  std::vector<FieldElement> consts;
  for (long c = -4; c <= 4; ++c) consts.push_back(FieldElement(spec, c));
  if (spec.nvars() >= 1) {
    FieldElement t = FieldElement::variable(spec, 0);
    consts.insert(consts.end(), {t, t * t, t + FieldElement::one(spec)});
  }
  if (spec.nvars() == 2) {
    FieldElement u = FieldElement::variable(spec, 0), v = FieldElement::variable(spec, 1);
    consts.insert(consts.end(), {v, u * v, u + v});
  }
  Poly x = Poly::x(spec);
  std::vector<Poly> family;
  for (const auto& c : consts) family.push_back(x - Poly::constant(c));
  for (const auto& c : consts) family.push_back(x * x - Poly::constant(c));
  AxiomReport rep;
  auto check = [&](const Poly& f, const Poly& g) {
    try {
      Value vf = oracle.evaluate(f), vg = oracle.evaluate(g);
      Value vp = oracle.evaluate(f * g), vs = oracle.evaluate(f + g);
      ++rep.samples;
      if (vp != vf + vg) {
        rep.passed = false;
        rep.failure = "multiplicativity: " + vp.str() + " != " + vf.str() + " + " + vg.str();
      } else if (vs < min(vf, vg)) {
        rep.passed = false;
        rep.failure = "ultrametric inequality: " + vs.str() + " < min(" + vf.str() + ", " + vg.str() + ")";
      }
      if (!rep.passed) rep.witness = std::make_pair(f, g);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted) throw;
      ++rep.skipped;
    }
    return rep.passed;
  };
  // every pair of linear factors first, then random products
  size_t nlin = consts.size();
  for (size_t i = 0; i < nlin && rep.samples + rep.skipped < samples; ++i)
    for (size_t j = i; j < nlin && rep.samples + rep.skipped < samples; ++j)
      if (!check(family[i], family[j])) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, family.size() - 1);
  while (rep.samples + rep.skipped < samples) {
    Poly f = family[pick(rng)], g = family[pick(rng)];
    if (rng() % 2) f = f * family[pick(rng)];
    if (rng() % 2) g = g + family[pick(rng)];
    if (g.is_zero()) continue;
    if (!check(f, g)) return rep;
  }
  return rep;
}

}  // namespace keypoly
