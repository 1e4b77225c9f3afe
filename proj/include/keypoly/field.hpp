#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "keypoly/scalar.hpp"
#include "keypoly/value.hpp"

namespace keypoly {

enum class BaseKind { Qp, FpT, QT, FpUV };

/// Descriptor of the base field K with its valuation.
struct FieldSpec {
  BaseKind kind = BaseKind::Qp;
  uint64_t p = 2;

  static FieldSpec rationals(uint64_t p);
  static FieldSpec fp_t(uint64_t p);
  static FieldSpec q_t();
  static FieldSpec fp_uv(uint64_t p);

  /// Characteristic of the residue field k_nu (0 for Q(t)).
  uint64_t residue_char() const { return kind == BaseKind::QT ? 0 : p; }
  /// The exponent base used by derivative formulas: char k_nu, or 1 in characteristic 0.
  uint64_t p_power_base() const { return residue_char() == 0 ? 1 : residue_char(); }
  /// Characteristic of K itself.
  uint64_t field_char() const { return kind == BaseKind::FpT || kind == BaseKind::FpUV ? p : 0; }
  /// Characteristic of the coefficients of rational functions.
  uint64_t coeff_char() const { return field_char(); }
  int nvars() const { return kind == BaseKind::Qp ? 0 : kind == BaseKind::FpUV ? 2 : 1; }
  ValueMode mode() const { return kind == BaseKind::FpUV ? ValueMode::Quadratic : ValueMode::Rational; }
  /// Value group of K.
  ValueGroup value_group() const;
  bool operator==(const FieldSpec& o) const { return kind == o.kind && residue_char() == o.residue_char(); }
  std::string describe() const;
};

using Mono = std::pair<long, long>;

/// Sparse polynomial in one or two variables with Scalar coefficients.
class MPoly {
 public:
  MPoly() = default;
  MPoly(uint64_t p, int nvars) : p_(p), nvars_(nvars) {}
  static MPoly constant(uint64_t p, int nvars, const Scalar& c);
  static MPoly monomial(uint64_t p, int nvars, Mono m, const Scalar& c);

  uint64_t prime() const { return p_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  const std::map<Mono, Scalar>& terms() const { return terms_; }
  void add_term(Mono m, const Scalar& c);
  /// Largest monomial in lexicographic order.
  std::pair<Mono, Scalar> leading() const;
  Mono min_exponents() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const Scalar& c) const;
  MPoly shifted(Mono by) const;
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

 private:
  uint64_t p_ = 0;
  int nvars_ = 1;
  std::map<Mono, Scalar> terms_;
};

/// Exact quotient of polynomials known to divide.
MPoly exact_divide(const MPoly& a, const MPoly& b);
MPoly poly_gcd(const MPoly& a, const MPoly& b);

/// Element of K: a rational number (p-adic case) or a reduced rational function.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldSpec& spec, const Rational& q);
  FieldElement(const FieldSpec& spec, long n) : FieldElement(spec, Rational(n)) {}
  static FieldElement zero(const FieldSpec& spec) { return FieldElement(spec, 0L); }
  static FieldElement one(const FieldSpec& spec) { return FieldElement(spec, 1L); }
  static FieldElement from_scalar(const FieldSpec& spec, const Scalar& s);
  static FieldElement fraction(const FieldSpec& spec, const MPoly& num, const MPoly& den);
  /// The variable t, u or v (index 0 or 1).
  static FieldElement variable(const FieldSpec& spec, int index);
  /// Canonical monomial of value gamma: p^a, t^a or u^a v^b.
  static FieldElement monomial(const FieldSpec& spec, const Value& gamma);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;
  const Rational& rational() const { return q_; }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  bool operator==(const FieldElement& o) const;

  std::string str() const;

 private:
  void canonicalize();
  FieldSpec spec_;
  Rational q_;
  MPoly num_, den_;
};

Value val(const FieldElement& a);
/// Residue of a unit of the valuation ring.
Scalar residue(const FieldElement& a);
/// Residue of a / monomial(val(a)).
Scalar normalized_residue(const FieldElement& a);
FieldElement lift_residue(const FieldSpec& spec, const Scalar& r);
/// Value of a monomial exponent vector.
Value mono_value(const FieldSpec& spec, Mono m);

}  // namespace keypoly
