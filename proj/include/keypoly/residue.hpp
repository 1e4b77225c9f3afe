#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "keypoly/scalar.hpp"

namespace keypoly {

/// Element of a residue tower, flattened over the prime field. Level k is a
/// polynomial of degree < deg(lambda_k) in the k-th generator whose
/// coefficients are level k-1 elements stored as consecutive blocks.
struct RElem {
  std::vector<Scalar> c;
  bool operator==(const RElem& o) const { return c == o.c; }
};

/// Dense univariate polynomial over a residue field, low degree first.
using RPoly = std::vector<RElem>;

class TowerField;
using TowerPtr = std::shared_ptr<const TowerField>;

/// k_nu or an iterated extension k_nu[y_1..y_m]/(lambda_1..lambda_m).
class TowerField : public std::enable_shared_from_this<TowerField> {
 public:
  static TowerPtr base(uint64_t p);
  /// Adjoin a root of lambda, which must be monic irreducible over this field.
  TowerPtr extend(const RPoly& lambda) const;

  uint64_t characteristic() const { return p_; }
  size_t degree() const { return dims_.back(); }
  size_t depth() const { return mins_.size(); }
  const RPoly& min_poly(size_t k) const { return mins_.at(k); }
  /// Parent field (nullptr for the base).
  TowerPtr parent() const { return parent_; }
  bool is_finite() const { return p_ != 0; }
  /// Number of elements, for finite fields.
  Integer order() const;

  RElem zero() const;
  RElem one() const;
  RElem from_scalar(const Scalar& s) const;
  RElem from_long(long n) const { return from_scalar(Scalar(p_, n)); }
  /// The generator adjoined last.
  RElem generator() const;
  /// Embed an element of a subfield of this tower (zero padding).
  RElem embed(const RElem& a) const;
  bool is_zero(const RElem& a) const;
  bool is_one(const RElem& a) const;
  bool in_prime_field(const RElem& a) const;

  RElem add(const RElem& a, const RElem& b) const;
  RElem sub(const RElem& a, const RElem& b) const;
  RElem neg(const RElem& a) const;
  RElem mul(const RElem& a, const RElem& b) const;
  RElem inv(const RElem& a) const;
  RElem div(const RElem& a, const RElem& b) const { return mul(a, inv(b)); }
  RElem pow(const RElem& a, const Integer& e) const;
  RElem scale(const RElem& a, const Scalar& s) const;
  RElem random(std::mt19937_64& rng) const;

  std::string str(const RElem& a) const;
  std::vector<std::string> coordinates(const RElem& a) const;

  // polynomial helpers
  void trim(RPoly& f) const;
  int deg(const RPoly& f) const { return int(f.size()) - 1; }
  RPoly padd(const RPoly& a, const RPoly& b) const;
  RPoly psub(const RPoly& a, const RPoly& b) const;
  RPoly pmul(const RPoly& a, const RPoly& b) const;
  RPoly pscale(const RPoly& a, const RElem& c) const;
  void pdivmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r) const;
  RPoly pmod(const RPoly& a, const RPoly& b) const;
  RPoly pgcd(const RPoly& a, const RPoly& b) const;
  RPoly pmonic(const RPoly& a) const;
  RPoly pderiv(const RPoly& a) const;
  RPoly ppowmod(const RPoly& a, const Integer& e, const RPoly& m) const;
  RElem peval(const RPoly& f, const RElem& x) const;
  RPoly x_poly() const { return {zero(), one()}; }
  std::string pstr(const RPoly& f, const std::string& var = "Z") const;

 private:
  TowerField() = default;
  RElem mul_level(size_t level, const RElem& a, const RElem& b) const;
  uint64_t p_ = 0;
  std::vector<RPoly> mins_;    // lambda_k over level k-1, coefficients of size dims_[k-1]
  std::vector<size_t> dims_;   // dims_[k] = degree of level k over the prime field
  TowerPtr parent_;
};

struct FactorEntry {
  RPoly factor;
  int multiplicity = 1;
};

struct Factorization {
  RElem unit;
  std::vector<FactorEntry> factors;
};

/// Factor a nonzero polynomial over a residue field. Over finite fields this is
/// complete; over Q it extracts rational roots and certifies irreducibility of
/// the remaining factors up to degree_bound.
Factorization factor_residual(const TowerField& F, const RPoly& f, uint64_t seed, int degree_bound = 4);
bool is_irreducible(const TowerField& F, const RPoly& f, int degree_bound = 4);

}  // namespace keypoly
