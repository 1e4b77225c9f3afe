#include "keypoly/scalar.hpp"

#include "keypoly/error.hpp"

namespace keypoly {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t reduce(const Integer& z, uint64_t p) {
  Integer m;
  mpz_fdiv_r_ui(m.get_mpz_t(), z.get_mpz_t(), p);
  return m.get_ui();
}

}  // namespace

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

long padic_order(const Integer& z, uint64_t p) {
  if (z == 0) throw Error(ErrorKind::InvalidInput, "order of zero");
  Integer a = abs(z);
  long k = 0;
  while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
    ++k;
  }
  return k;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Scalar::Scalar(uint64_t p, long value) : p_(p) {
  if (p_ == 0) {
    q_ = value;
  } else {
    r_ = reduce(Integer(value), p_);
  }
}

Scalar::Scalar(uint64_t p, const Rational& value) : p_(p) {
  Rational v = value;
  v.canonicalize();
  if (p_ == 0) {
    q_ = v;
    return;
  }
  uint64_t d = reduce(v.get_den(), p_);
  if (d == 0) throw Error(ErrorKind::NonUnitValue, "denominator divisible by " + std::to_string(p_));
  r_ = mulmod(reduce(v.get_num(), p_), powmod(d, p_ - 2, p_), p_);
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return p_ ? r_ == 1 % p_ : q_ == 1; }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_) {
    s.r_ = r_ ? p_ - r_ : 0;
  } else {
    s.q_ = -q_;
  }
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s = *this;
  if (p_) {
    s.r_ = (r_ + o.r_) % p_;
  } else {
    s.q_ = q_ + o.q_;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s = *this;
  if (p_) {
    s.r_ = mulmod(r_, o.r_, p_);
  } else {
    s.q_ = q_ * o.q_;
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "inverse of zero scalar");
  Scalar s = *this;
  if (p_) {
    s.r_ = powmod(r_, p_ - 2, p_);
  } else {
    s.q_ = 1 / q_;
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(const Integer& e) const {
  Scalar base = *this, r = one(p_);
  Integer k = e;
  if (k < 0) {
    base = base.inverse();
    k = -k;
  }
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const { return p_ ? r_ == o.r_ : q_ == o.q_; }

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
  if (p_) return r_ <=> o.r_;
  int c = cmp(q_, o.q_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string Scalar::str() const { return p_ ? std::to_string(r_) : q_.get_str(); }

}  // namespace keypoly
