#include "keypoly/poly.hpp"

#include "keypoly/error.hpp"

namespace keypoly {

Poly::Poly(const FieldSpec& spec, std::vector<FieldElement> coeffs) : spec_(spec), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const FieldElement& c) { return Poly(c.spec(), {c}); }

Poly Poly::x(const FieldSpec& spec) { return Poly(spec, {FieldElement::zero(spec), FieldElement::one(spec)}); }

Poly Poly::monomial(const FieldElement& c, int k) {
  std::vector<FieldElement> v(size_t(k) + 1, FieldElement::zero(c.spec()));
  v[k] = c;
  return Poly(c.spec(), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i >= int(c_.size())) return FieldElement::zero(spec_);
  return c_[i];
}

const FieldElement& Poly::leading() const {
  if (c_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading coefficient of zero");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FieldElement> v(std::max(c_.size(), o.c_.size()), FieldElement::zero(spec_));
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Poly(spec_, std::move(v));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(spec_);
  std::vector<FieldElement> v(c_.size() + o.c_.size() - 1, FieldElement::zero(spec_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      v[i + j] += c_[i] * o.c_[j];
    }
  }
  return Poly(spec_, std::move(v));
}

Poly Poly::operator*(const FieldElement& c) const {
  if (c.is_zero()) return Poly(spec_);
  Poly r = *this;
  for (auto& x : r.c_) x *= c;
  r.trim();
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::InvalidInput, "negative polynomial power");
  Poly r = constant(FieldElement::one(spec_)), base = *this;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

namespace {

bool top_level_sum(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && i > 0 && (ch == '+' || ch == '-')) return true;
  }
  return false;
}

}  // namespace

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string c = c_[i].str();
    bool neg = false;
    if (!c.empty() && c[0] == '-' && !top_level_sum(c)) {
      neg = true;
      c = c.substr(1);
    }
    bool compound = top_level_sum(c);
    std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
    std::string term;
    if (mono.empty()) {
      term = compound && !out.empty() ? "(" + c + ")" : c;
    } else if (c == "1") {
      term = mono;
    } else {
      term = (compound ? "(" + c + ")" : c) + "*" + mono;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " + term : " + " + term;
    }
  }
  return out;
}

void euclid_div(const Poly& f, const Poly& g, Poly& q, Poly& r) {
  if (g.degree() < 1 || !g.is_monic()) throw Error(ErrorKind::NonMonicDivisor, "divisor must be monic of degree >= 1");
  const FieldSpec& spec = f.spec();
  std::vector<FieldElement> rem = f.coeffs();
  int dg = g.degree();
  int df = f.degree();
  if (df < dg) {
    q = Poly(spec);
    r = f;
    return;
  }
  std::vector<FieldElement> quo(size_t(df - dg + 1), FieldElement::zero(spec));
  const auto& gc = g.coeffs();
  for (int k = df; k >= dg; --k) {
    if (rem[k].is_zero()) continue;
    FieldElement c = rem[k];
    quo[k - dg] = c;
    for (int j = 0; j <= dg; ++j) {
      if (gc[j].is_zero()) continue;
      rem[k - dg + j] -= c * gc[j];
    }
  }
  rem.resize(size_t(dg), FieldElement::zero(spec));
  q = Poly(spec, std::move(quo));
  r = Poly(spec, std::move(rem));
}

Poly hasse_derivative(const Poly& f, int b) {
  if (b < 0) throw Error(ErrorKind::InvalidInput, "negative derivative order");
  const FieldSpec& spec = f.spec();
  if (f.degree() < b) return Poly(spec);
  std::vector<FieldElement> v;
  for (int n = b; n <= f.degree(); ++n) {
    Integer c = binomial(n, b);
    v.push_back(f.coeffs()[n] * FieldElement(spec, Rational(c)));
  }
  return Poly(spec, std::move(v));
}

Poly compose(const Poly& f, const Poly& g) {
  Poly acc(f.spec());
  for (int i = f.degree(); i >= 0; --i) acc = acc * g + Poly::constant(f.coeffs()[i]);
  return acc;
}

FieldElement evaluate(const Poly& f, const FieldElement& point) {
  FieldElement acc = FieldElement::zero(f.spec());
  for (int i = f.degree(); i >= 0; --i) acc = acc * point + f.coeffs()[i];
  return acc;
}

Poly evaluate_mod(const Poly& f, const Poly& m) {
  Poly q, r;
  euclid_div(f, m, q, r);
  return r;
}

}  // namespace keypoly
