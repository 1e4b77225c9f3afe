#include "keypoly/value.hpp"

#include <cmath>

#include "keypoly/error.hpp"

namespace keypoly {

namespace {

int sgn(const Rational& q) { return q < 0 ? -1 : q > 0 ? 1 : 0; }

std::strong_ordering from_int(int c) {
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

Value::Value(const Rational& a, const Rational& b) : a_(a), b_(b) {
  a_.canonicalize();
  b_.canonicalize();
}

Value Value::rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return Value(q);
}

Value Value::infinity() {
  Value v;
  v.inf_ = true;
  return v;
}

int Value::sign() const {
  if (inf_) return 1;
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // mixed signs: compare a^2 with 2 b^2
  int c = cmp(a_ * a_, 2 * b_ * b_);
  return c > 0 ? sa : c < 0 ? sb : 0;
}

Value Value::operator+(const Value& o) const {
  if (inf_ || o.inf_) return infinity();
  return Value(a_ + o.a_, b_ + o.b_);
}

Value Value::operator-() const {
  if (inf_) throw Error(ErrorKind::InvalidInput, "negation of infinite value");
  return Value(-a_, -b_);
}

Value Value::operator-(const Value& o) const {
  if (o.inf_) throw Error(ErrorKind::InvalidInput, "subtraction of infinite value");
  if (inf_) return infinity();
  return Value(a_ - o.a_, b_ - o.b_);
}

Value Value::operator*(const Rational& k) const {
  if (inf_) {
    if (k == 0) return Value();
    if (k < 0) throw Error(ErrorKind::InvalidInput, "negative multiple of infinity");
    return infinity();
  }
  return Value(a_ * k, b_ * k);
}

Value Value::operator/(const Rational& k) const {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "division of value by zero");
  return *this * (1 / k);
}

bool Value::operator==(const Value& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return a_ == o.a_ && b_ == o.b_;
}

std::strong_ordering Value::operator<=>(const Value& o) const {
  if (inf_ || o.inf_) return from_int(int(inf_) - int(o.inf_));
  return from_int(Value(a_ - o.a_, b_ - o.b_).sign());
}

std::string Value::str() const {
  if (inf_) return "inf";
  if (b_ == 0) return a_.get_str();
  std::string s = a_ == 0 ? "" : a_.get_str();
  if (a_ != 0 && b_ > 0) s += "+";
  if (b_ == -1) {
    s += "-";
  } else if (b_ != 1) {
    s += b_.get_str() + "*";
  }
  return s + "r2";
}

double Value::approx() const {
  if (inf_) return INFINITY;
  return a_.get_d() + b_.get_d() * std::sqrt(2.0);
}

Value min(const Value& x, const Value& y) { return y < x ? y : x; }
Value max(const Value& x, const Value& y) { return x < y ? y : x; }

ValueGroup::ValueGroup(const std::vector<Value>& generators) {
  for (const auto& g : generators) {
    if (g.is_infinite()) throw Error(ErrorKind::InvalidInput, "infinite generator");
    if (!g.is_zero()) gens_.push_back(g);
  }
  normalize();
}

ValueGroup ValueGroup::with(const Value& generator) const {
  std::vector<Value> g = gens_;
  g.push_back(generator);
  return ValueGroup(g);
}

void ValueGroup::normalize() {
  scale_ = 1;
  for (const auto& g : gens_) {
    scale_ = lcm_int(scale_, g.a().get_den());
    scale_ = lcm_int(scale_, g.b().get_den());
  }
  Integer px = 0, py = 0;
  std::vector<Integer> second;
  for (const auto& g : gens_) {
    Rational sa = g.a() * scale_, sb = g.b() * scale_;
    Integer a = sa.get_num(), b = sb.get_num();
    if (a == 0) {
      second.push_back(b);
      continue;
    }
    if (px == 0) {
      px = a;
      py = b;
      continue;
    }
    Integer gcd, s, t;
    mpz_gcdext(gcd.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), px.get_mpz_t(), a.get_mpz_t());
    Integer ny = s * py + t * b;
    Integer other = (a / gcd) * py - (px / gcd) * b;
    second.push_back(other);
    px = gcd;
    py = ny;
  }
  if (px < 0) {
    px = -px;
    py = -py;
  }
  Integer r11 = 0;
  for (const auto& b : second) mpz_gcd(r11.get_mpz_t(), r11.get_mpz_t(), b.get_mpz_t());
  if (r11 != 0) mpz_fdiv_r(py.get_mpz_t(), py.get_mpz_t(), r11.get_mpz_t());
  r00_ = px;
  r01_ = py;
  r11_ = r11;
}

bool ValueGroup::contains(const Value& v) const {
  auto idx = index_of(v);
  return idx && *idx == 1;
}

std::optional<Integer> ValueGroup::index_of(const Value& beta) const {
  if (beta.is_infinite()) return std::nullopt;
  if (beta.is_zero()) return Integer(1);
  Rational A = beta.a() * scale_, B = beta.b() * scale_;
  Rational x = 0;
  if (r00_ == 0) {
    if (A != 0) return std::nullopt;
  } else {
    x = A / r00_;
  }
  Rational y = B - x * r01_;
  Rational z = 0;
  if (r11_ == 0) {
    if (y != 0) return std::nullopt;
  } else {
    z = y / r11_;
  }
  return lcm_int(x.get_den(), z.get_den());
}

int ValueGroup::rank() const { return int(r00_ != 0) + int(r11_ != 0); }

std::optional<Integer> group_index(const std::vector<Value>& gens, const Value& beta) {
  return ValueGroup(gens).index_of(beta);
}

}  // namespace keypoly
