#include "keypoly/field.hpp"

#include <algorithm>

#include "keypoly/error.hpp"

namespace keypoly {

FieldSpec FieldSpec::rationals(uint64_t p) { return {BaseKind::Qp, p}; }
FieldSpec FieldSpec::fp_t(uint64_t p) { return {BaseKind::FpT, p}; }
FieldSpec FieldSpec::q_t() { return {BaseKind::QT, 0}; }
FieldSpec FieldSpec::fp_uv(uint64_t p) { return {BaseKind::FpUV, p}; }

ValueGroup FieldSpec::value_group() const {
  if (kind == BaseKind::FpUV) return ValueGroup({Value(1), Value(Rational(0), Rational(1))});
  return ValueGroup({Value(1)});
}

std::string FieldSpec::describe() const {
  switch (kind) {
    case BaseKind::Qp: return "Q with " + std::to_string(p) + "-adic valuation";
    case BaseKind::FpT: return "F_" + std::to_string(p) + "(t)";
    case BaseKind::QT: return "Q(t)";
    case BaseKind::FpUV: return "F_" + std::to_string(p) + "(u,v)";
  }
  return "";
}

// ---- sparse polynomials

MPoly MPoly::constant(uint64_t p, int nvars, const Scalar& c) { return monomial(p, nvars, {0, 0}, c); }

MPoly MPoly::monomial(uint64_t p, int nvars, Mono m, const Scalar& c) {
  MPoly r(p, nvars);
  r.add_term(m, c);
  return r;
}

void MPoly::add_term(Mono m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::pair<Mono, Scalar> MPoly::leading() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading term of zero");
  return *terms_.rbegin();
}

Mono MPoly::min_exponents() const {
  Mono m{0, 0};
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
    } else {
      m.first = std::min(m.first, e.first);
      m.second = std::min(m.second, e.second);
    }
  }
  return m;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(p_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(p_, nvars_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term({m1.first + m2.first, m1.second + m2.second}, c1 * c2);
  return r;
}

MPoly MPoly::scaled(const Scalar& c) const {
  MPoly r(p_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
  return r;
}

MPoly MPoly::shifted(Mono by) const {
  MPoly r(p_, nvars_);
  for (const auto& [m, a] : terms_) r.terms_.emplace(Mono{m.first + by.first, m.second + by.second}, a);
  return r;
}

namespace {

using UPoly = std::vector<Scalar>;
using BPoly = std::vector<UPoly>;

void trim(UPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

void trim(BPoly& f) {
  while (!f.empty() && f.back().empty()) f.pop_back();
}

UPoly u_sub(const UPoly& a, const UPoly& b, uint64_t p) {
  UPoly r(std::max(a.size(), b.size()), Scalar::zero(p));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

UPoly u_mul(const UPoly& a, const UPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Scalar::zero(p));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

void u_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r, uint64_t p) {
  r = a;
  trim(r);
  q.clear();
  if (b.empty()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, Scalar::zero(p));
  Scalar inv = b.back().inverse();
  long db = long(b.size()) - 1;
  for (long k = long(r.size()) - 1; k >= db; --k) {
    Scalar c = r[k] * inv;
    q[k - db] = c;
    if (c.is_zero()) continue;
    for (long j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
  }
  trim(r);
  trim(q);
}

UPoly u_monic(UPoly f) {
  if (f.empty()) return f;
  Scalar inv = f.back().inverse();
  for (auto& c : f) c *= inv;
  return f;
}

UPoly u_gcd(UPoly a, UPoly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly q, r;
    u_divmod(a, b, q, r, p);
    a = std::move(b);
    b = std::move(r);
  }
  return u_monic(a);
}

UPoly u_exact_div(const UPoly& a, const UPoly& b, uint64_t p) {
  UPoly q, r;
  u_divmod(a, b, q, r, p);
  if (!r.empty()) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
  return q;
}

UPoly to_upoly(const MPoly& f) {
  UPoly r;
  for (const auto& [m, c] : f.terms()) {
    if (m.first < 0 || m.second != 0) throw Error(ErrorKind::InvalidInput, "not a univariate polynomial");
    if (r.size() <= size_t(m.first)) r.resize(m.first + 1, Scalar::zero(f.prime()));
    r[m.first] = c;
  }
  return r;
}

MPoly from_upoly(const UPoly& f, uint64_t p) {
  MPoly r(p, 1);
  for (size_t i = 0; i < f.size(); ++i) r.add_term({long(i), 0}, f[i]);
  return r;
}

BPoly to_bpoly(const MPoly& f) {
  BPoly r;
  for (const auto& [m, c] : f.terms()) {
    if (m.first < 0 || m.second < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
    if (r.size() <= size_t(m.second)) r.resize(m.second + 1);
    UPoly& u = r[m.second];
    if (u.size() <= size_t(m.first)) u.resize(m.first + 1, Scalar::zero(f.prime()));
    u[m.first] = c;
  }
  return r;
}

MPoly from_bpoly(const BPoly& f, uint64_t p) {
  MPoly r(p, 2);
  for (size_t j = 0; j < f.size(); ++j)
    for (size_t i = 0; i < f[j].size(); ++i) r.add_term({long(i), long(j)}, f[j][i]);
  return r;
}

UPoly b_content(const BPoly& f, uint64_t p) {
  UPoly g;
  for (const auto& c : f) g = u_gcd(g, c, p);
  return g;
}

BPoly b_div_scalar_poly(const BPoly& f, const UPoly& c, uint64_t p) {
  BPoly r;
  for (const auto& a : f) r.push_back(a.empty() ? UPoly{} : u_exact_div(a, c, p));
  return r;
}

BPoly b_primitive(const BPoly& f, uint64_t p) {
  if (f.empty()) return f;
  return b_div_scalar_poly(f, b_content(f, p), p);
}

BPoly b_prem(BPoly a, const BPoly& b, uint64_t p) {
  const UPoly& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    UPoly la = a.back();
    size_t shift = a.size() - b.size();
    for (auto& c : a) c = u_mul(c, lb, p);
    for (size_t j = 0; j < b.size(); ++j) a[j + shift] = u_sub(a[j + shift], u_mul(la, b[j], p), p);
    trim(a);
  }
  return a;
}

BPoly b_gcd(BPoly a, BPoly b, uint64_t p) {
  trim(a);
  trim(b);
  if (a.empty()) return b_primitive(b, p);
  if (b.empty()) return b_primitive(a, p);
  UPoly cg = u_gcd(b_content(a, p), b_content(b, p), p);
  a = b_primitive(a, p);
  b = b_primitive(b, p);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    BPoly r = b_primitive(b_prem(a, b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  for (auto& c : a) c = u_mul(c, cg, p);
  return a;
}

BPoly b_exact_div(BPoly a, const BPoly& b, uint64_t p) {
  trim(a);
  if (b.empty()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
  BPoly q(a.size() - b.size() + 1);
  while (!a.empty()) {
    if (a.size() < b.size()) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
    size_t shift = a.size() - b.size();
    UPoly c = u_exact_div(a.back(), b.back(), p);
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[j + shift] = u_sub(a[j + shift], u_mul(c, b[j], p), p);
    trim(a);
  }
  trim(q);
  return q;
}

}  // namespace

MPoly exact_divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by zero polynomial");
  if (b.is_monomial()) {
    auto [m, c] = b.leading();
    MPoly r = a.shifted({-m.first, -m.second}).scaled(c.inverse());
    for (const auto& [e, x] : r.terms())
      if (e.first < 0 || e.second < 0) throw Error(ErrorKind::InvalidInput, "inexact monomial division");
    return r;
  }
  if (a.nvars() <= 1) return from_upoly(u_exact_div(to_upoly(a), to_upoly(b), a.prime()), a.prime());
  return from_bpoly(b_exact_div(to_bpoly(a), to_bpoly(b), a.prime()), a.prime());
}

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
  if (a.nvars() <= 1) return from_upoly(u_gcd(to_upoly(a), to_upoly(b), a.prime()), a.prime());
  return from_bpoly(b_gcd(to_bpoly(a), to_bpoly(b), a.prime()), a.prime());
}

// ---- field elements

FieldElement::FieldElement(const FieldSpec& spec, const Rational& q) : spec_(spec) {
  if (spec_.kind == BaseKind::Qp) {
    q_ = q;
    return;
  }
  uint64_t cp = spec_.coeff_char();
  int nv = spec_.nvars();
  num_ = MPoly::constant(cp, nv, Scalar(cp, q));
  den_ = MPoly::constant(cp, nv, Scalar::one(cp));
}

FieldElement FieldElement::from_scalar(const FieldSpec& spec, const Scalar& s) {
  if (spec.kind == BaseKind::Qp) {
    if (s.prime() == 0) return FieldElement(spec, s.rational());
    return FieldElement(spec, Rational(long(s.residue())));
  }
  uint64_t cp = spec.coeff_char();
  Scalar c = s.prime() == cp ? s : Scalar(cp, s.prime() == 0 ? s.rational() : Rational(long(s.residue())));
  return fraction(spec, MPoly::constant(cp, spec.nvars(), c), MPoly::constant(cp, spec.nvars(), Scalar::one(cp)));
}

FieldElement FieldElement::fraction(const FieldSpec& spec, const MPoly& num, const MPoly& den) {
  if (spec.kind == BaseKind::Qp) throw Error(ErrorKind::InvalidInput, "rational function over Q");
  if (den.is_zero()) throw Error(ErrorKind::InvalidInput, "zero denominator");
  FieldElement r;
  r.spec_ = spec;
  r.num_ = num;
  r.den_ = den;
  r.canonicalize();
  return r;
}

FieldElement FieldElement::variable(const FieldSpec& spec, int index) {
  if (index >= spec.nvars()) throw Error(ErrorKind::UnknownSymbol, "variable not in base field");
  uint64_t cp = spec.coeff_char();
  Mono m = index == 0 ? Mono{1, 0} : Mono{0, 1};
  return fraction(spec, MPoly::monomial(cp, spec.nvars(), m, Scalar::one(cp)),
                  MPoly::constant(cp, spec.nvars(), Scalar::one(cp)));
}

FieldElement FieldElement::monomial(const FieldSpec& spec, const Value& gamma) {
  if (gamma.is_infinite()) throw Error(ErrorKind::InvalidInput, "monomial of infinite value");
  if (gamma.a().get_den() != 1 || gamma.b().get_den() != 1)
    throw Error(ErrorKind::InvalidInput, "value " + gamma.str() + " is not in the base value group");
  long a = gamma.a().get_num().get_si();
  long b = gamma.b().get_num().get_si();
  if (spec.kind != BaseKind::FpUV && b != 0)
    throw Error(ErrorKind::InvalidInput, "value " + gamma.str() + " is not in the base value group");
  if (spec.kind == BaseKind::Qp) {
    Integer pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), spec.p, std::labs(a));
    return FieldElement(spec, a >= 0 ? Rational(pa) : Rational(1) / Rational(pa));
  }
  uint64_t cp = spec.coeff_char();
  int nv = spec.nvars();
  Mono up{std::max(a, 0L), std::max(b, 0L)}, down{std::max(-a, 0L), std::max(-b, 0L)};
  return fraction(spec, MPoly::monomial(cp, nv, up, Scalar::one(cp)), MPoly::monomial(cp, nv, down, Scalar::one(cp)));
}

bool FieldElement::is_zero() const { return spec_.kind == BaseKind::Qp ? q_ == 0 : num_.is_zero(); }

bool FieldElement::is_one() const {
  if (spec_.kind == BaseKind::Qp) return q_ == 1;
  return num_ == den_;
}

void FieldElement::canonicalize() {
  uint64_t cp = spec_.coeff_char();
  int nv = spec_.nvars();
  if (num_.is_zero()) {
    den_ = MPoly::constant(cp, nv, Scalar::one(cp));
    return;
  }
  Mono mn = num_.min_exponents(), md = den_.min_exponents();
  Mono common{std::min(mn.first, md.first), std::min(mn.second, md.second)};
  if (common != Mono{0, 0}) {
    num_ = num_.shifted({-common.first, -common.second});
    den_ = den_.shifted({-common.first, -common.second});
  }
  if (!den_.is_monomial() && !num_.is_monomial()) {
    MPoly g = poly_gcd(num_, den_);
    if (!(g.is_monomial() && g.leading().first == Mono{0, 0})) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  Scalar lc = den_.leading().second;
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (spec_.kind == BaseKind::Qp) return FieldElement(spec_, Rational(q_ + o.q_));
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) return fraction(spec_, num_ + o.num_, den_);
  return fraction(spec_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  if (spec_.kind == BaseKind::Qp) {
    r.q_ = -q_;
  } else {
    r.num_ = -num_;
  }
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (spec_.kind == BaseKind::Qp) return FieldElement(spec_, Rational(q_ * o.q_));
  if (is_zero() || o.is_zero()) return zero(spec_);
  return fraction(spec_, num_ * o.num_, den_ * o.den_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "inverse of zero");
  if (spec_.kind == BaseKind::Qp) return FieldElement(spec_, Rational(1 / q_));
  return fraction(spec_, den_, num_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  FieldElement r = one(spec_);
  unsigned long k = std::labs(e);
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (spec_.kind == BaseKind::Qp) return q_ == o.q_;
  return num_ == o.num_ && den_ == o.den_;
}

namespace {

std::string mpoly_str(const MPoly& f, const FieldSpec& spec) {
  if (f.is_zero()) return "0";
  const char* names[2] = {spec.kind == BaseKind::FpUV ? "u" : "t", "v"};
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.str();
    bool neg = spec.coeff_char() == 0 && c.rational() < 0;
    if (neg) cs = (-c).str();
    std::string mono;
    long e[2] = {m.first, m.second};
    for (int k = 0; k < 2; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[k];
      if (e[k] != 1) mono += "^" + std::to_string(e[k]);
    }
    std::string term;
    if (mono.empty()) {
      term = cs;
    } else if (cs == "1") {
      term = mono;
    } else {
      term = cs + "*" + mono;
    }
    if (first) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " + term : " + " + term;
    }
    first = false;
  }
  return out;
}

}  // namespace

std::string FieldElement::str() const {
  if (spec_.kind == BaseKind::Qp) return q_.get_str();
  std::string n = mpoly_str(num_, spec_);
  if (den_.is_monomial() && den_.leading().first == Mono{0, 0}) return n;
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = mpoly_str(den_, spec_);
  if (den_.terms().size() > 1 || !den_.leading().second.is_one() ||
      (den_.leading().first.first != 0 && den_.leading().first.second != 0))
    d = "(" + d + ")";
  return n + "/" + d;
}

Value mono_value(const FieldSpec& spec, Mono m) {
  if (spec.kind == BaseKind::FpUV) return Value(Rational(m.first), Rational(m.second));
  return Value(Rational(m.first));
}

namespace {

// Lowest-value term of a nonzero polynomial.
std::pair<Value, Scalar> lowest_term(const MPoly& f, const FieldSpec& spec) {
  bool first = true;
  Value best;
  Scalar coeff;
  for (const auto& [m, c] : f.terms()) {
    Value v = mono_value(spec, m);
    if (first || v < best) {
      best = v;
      coeff = c;
      first = false;
    }
  }
  return {best, coeff};
}

}  // namespace

Value val(const FieldElement& a) {
  if (a.is_zero()) return Value::infinity();
  const FieldSpec& spec = a.spec();
  if (spec.kind == BaseKind::Qp) {
    return Value(Rational(padic_order(a.rational().get_num(), spec.p) - padic_order(a.rational().get_den(), spec.p)));
  }
  return lowest_term(a.num(), spec).first - lowest_term(a.den(), spec).first;
}

Scalar normalized_residue(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorKind::NonUnitValue, "residue of zero");
  const FieldSpec& spec = a.spec();
  if (spec.kind == BaseKind::Qp) {
    Integer n = a.rational().get_num(), d = a.rational().get_den();
    while (mpz_divisible_ui_p(n.get_mpz_t(), spec.p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), spec.p);
    while (mpz_divisible_ui_p(d.get_mpz_t(), spec.p)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), spec.p);
    return Scalar(spec.p, Rational(n, d));
  }
  return lowest_term(a.num(), spec).second / lowest_term(a.den(), spec).second;
}

Scalar residue(const FieldElement& a) {
  Value v = val(a);
  if (!v.is_zero()) throw Error(ErrorKind::NonUnitValue, "value " + v.str() + " is not zero");
  return normalized_residue(a);
}

FieldElement lift_residue(const FieldSpec& spec, const Scalar& r) { return FieldElement::from_scalar(spec, r); }

}  // namespace keypoly
