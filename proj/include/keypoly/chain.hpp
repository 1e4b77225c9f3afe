#pragma once

#include <optional>
#include <vector>

#include "keypoly/poly.hpp"
#include "keypoly/residue.hpp"
#include "keypoly/value.hpp"

namespace keypoly {

/// One entry (Q_i, beta_i, alpha_i) of a key-polynomial chain with the
/// residual data attached to it.
struct Level {
  Poly Q;
  Value beta;
  int alpha = 1;
  /// Value group generated by K and the earlier betas.
  ValueGroup group_before;
  /// Smallest positive multiple of beta lying in group_before.
  long abar = 1;
  /// Set once the next entry is appended.
  bool closed = false;
  RPoly lambda;
  TowerPtr field_before;
  TowerPtr field_after;
  RElem zeta;
  bool has_generator() const { return closed && field_after != field_before; }
};

struct StandardExpansion {
  int level = 0;
  std::vector<Poly> coeffs;
  Poly reconstruct(const Poly& Q) const;
};

struct LimitMarker {
  Poly Q;
  Value beta;
};

struct NewtonSide {
  Value slope;
  int from = 0;
  int to = 0;
};

struct NewtonPolygon {
  std::vector<std::pair<int, Value>> points;
  std::vector<std::pair<int, Value>> hull;
  std::vector<NewtonSide> sides;
};

class KeyChain {
 public:
  KeyChain() = default;
  /// Chain [x @ beta1].
  KeyChain(const FieldSpec& spec, const Value& beta1);

  const FieldSpec& spec() const { return spec_; }
  int length() const { return int(levels_.size()); }
  /// 1-based access.
  const Level& level(int i) const;
  const Level& top() const { return levels_.back(); }
  int degree(int i) const { return level(i).Q.degree(); }
  /// Residue field carrying residues of polynomials of degree < deg Q_{i+1}.
  TowerPtr residue_field(int i) const;
  /// Value group generated by K and beta_1..beta_i.
  ValueGroup group(int i) const;
  bool is_complete() const { return !levels_.empty() && top().beta.is_infinite(); }

  /// Append Q with value beta; validates the key-polynomial conditions and
  /// derives the residual data of the current top level.
  void append(const Poly& Q, const Value& beta);
  KeyChain prefix(int n) const;

  StandardExpansion expand(const Poly& h, int i) const;
  /// nu_i(h); level 0 is the base valuation on constants.
  Value truncation(const Poly& h, int i) const;
  Value top_truncation(const Poly& h) const { return truncation(h, length()); }
  std::vector<Value> coefficient_values(const StandardExpansion& e) const;

  std::optional<LimitMarker> limit;
  /// Value under the declared limit marker: min_j nu_top(d_j) + j*beta.
  Value limit_truncation(const Poly& h) const;

 private:
  FieldSpec spec_;
  std::vector<Level> levels_;
  TowerPtr base_field_;
};

NewtonPolygon newton_polygon(const KeyChain& chain, const Poly& h, int i);
std::vector<int> support_set(const KeyChain& chain, const Poly& h, int i, const Value& beta);
bool determines_side(const KeyChain& chain, const Poly& h, int i, const Value& beta);

}  // namespace keypoly
