#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "keypoly/scalar.hpp"

namespace keypoly {

enum class ValueMode { Rational, Quadratic };

/// An element a + b*sqrt(2) of the value group, or +infinity.
class Value {
 public:
  Value() = default;
  Value(long a) : a_(a) {}
  Value(const Rational& a) : a_(a) { a_.canonicalize(); }
  Value(const Rational& a, const Rational& b);

  static Value infinity();
  static Value rational(long num, long den = 1);

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  bool is_zero() const { return !inf_ && a_ == 0 && b_ == 0; }
  bool is_rational() const { return !inf_ && b_ == 0; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  /// Sign of the real number a + b*sqrt(2); infinity counts as positive.
  int sign() const;

  Value operator+(const Value& o) const;
  Value operator-(const Value& o) const;
  Value operator-() const;
  Value operator*(const Rational& k) const;
  Value operator/(const Rational& k) const;
  Value& operator+=(const Value& o) { return *this = *this + o; }
  Value& operator-=(const Value& o) { return *this = *this - o; }

  bool operator==(const Value& o) const;
  std::strong_ordering operator<=>(const Value& o) const;

  std::string str() const;
  double approx() const;

 private:
  bool inf_ = false;
  Rational a_;
  Rational b_;
};

Value min(const Value& x, const Value& y);
Value max(const Value& x, const Value& y);

/// Finitely generated subgroup of Q + Q*sqrt(2), kept as an integer basis in
/// Hermite form after scaling by a common denominator.
class ValueGroup {
 public:
  ValueGroup() = default;
  explicit ValueGroup(const std::vector<Value>& generators);

  ValueGroup with(const Value& generator) const;
  bool contains(const Value& v) const;
  /// Smallest n >= 1 with n*beta in the group; nullopt when none exists.
  std::optional<Integer> index_of(const Value& beta) const;
  /// Rank of the group as a free abelian group (0, 1 or 2).
  int rank() const;
  const std::vector<Value>& generators() const { return gens_; }

 private:
  void normalize();
  std::vector<Value> gens_;
  Integer scale_ = 1;
  // basis rows (r00, r01), (0, r11) over Z for scale*(a, b)
  Integer r00_ = 0, r01_ = 0, r11_ = 0;
};

std::optional<Integer> group_index(const std::vector<Value>& gens, const Value& beta);

}  // namespace keypoly
