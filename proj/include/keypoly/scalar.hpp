#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace keypoly {

using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// p-adic order of a nonzero integer.
long padic_order(const Integer& z, uint64_t p);
/// Binomial coefficient C(n, k) as an exact integer; zero when k > n.
Integer binomial(long n, long k);

/// An element of F_p (p > 0) or of Q (p == 0).
class Scalar {
 public:
  Scalar() = default;
  Scalar(uint64_t p, long value);
  Scalar(uint64_t p, const Rational& value);

  static Scalar zero(uint64_t p) { return Scalar(p, 0L); }
  static Scalar one(uint64_t p) { return Scalar(p, 1L); }

  uint64_t prime() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  uint64_t residue() const { return r_; }
  const Rational& rational() const { return q_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(const Integer& e) const;

  bool operator==(const Scalar& o) const;
  /// Canonical total order used for deterministic sorting.
  std::strong_ordering operator<=>(const Scalar& o) const;

  std::string str() const;

 private:
  uint64_t p_ = 0;
  uint64_t r_ = 0;
  Rational q_;
};

}  // namespace keypoly
