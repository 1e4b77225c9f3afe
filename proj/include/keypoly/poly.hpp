#pragma once

#include <string>
#include <vector>

#include "keypoly/field.hpp"

namespace keypoly {

/// Dense univariate polynomial in x over K, low degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FieldSpec& spec) : spec_(spec) {}
  Poly(const FieldSpec& spec, std::vector<FieldElement> coeffs);
  static Poly constant(const FieldElement& c);
  static Poly x(const FieldSpec& spec);
  /// c * x^k
  static Poly monomial(const FieldElement& c, int k);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(int i) const;
  const FieldElement& leading() const;
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool is_constant() const { return c_.size() <= 1; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElement& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(int e) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  void trim();
  FieldSpec spec_;
  std::vector<FieldElement> c_;
};

/// f = q*g + r with deg r < deg g; g monic.
void euclid_div(const Poly& f, const Poly& g, Poly& q, Poly& r);
/// Divided-power derivative: d_b(x^n) = C(n, b) x^(n-b).
Poly hasse_derivative(const Poly& f, int b);
/// Substitute a polynomial for x.
Poly compose(const Poly& f, const Poly& g);
/// Evaluate at an element of K.
FieldElement evaluate(const Poly& f, const FieldElement& point);
/// Remainder of f modulo a monic m, i.e. f evaluated at a root of m in K[y]/(m).
Poly evaluate_mod(const Poly& f, const Poly& m);

}  // namespace keypoly
