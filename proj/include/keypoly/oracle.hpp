#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "keypoly/chain.hpp"
#include "keypoly/poly.hpp"

namespace keypoly {

/// The target valuation nu' on K[x].
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Value evaluate(const Poly& f) const = 0;
  virtual const FieldSpec& field() const = 0;
  virtual std::string kind() const = 0;
  /// Supremum of the values nu'(x - a) when the backend knows it.
  virtual std::optional<Value> declared_bound() const { return std::nullopt; }
};

using OraclePtr = std::shared_ptr<const Oracle>;

/// nu' given by a stored complete chain: the top truncation.
class ChainOracle : public Oracle {
 public:
  explicit ChainOracle(KeyChain chain) : chain_(std::move(chain)) {}
  Value evaluate(const Poly& f) const override { return chain_.top_truncation(f); }
  const FieldSpec& field() const override { return chain_.spec(); }
  std::string kind() const override { return "chain"; }
  const KeyChain& chain() const { return chain_; }

 private:
  KeyChain chain_;
};

/// nu'(f) = w(f(theta)) for a root theta of m, computed in K[y]/(m) by
/// w(sum a_i theta^i) = min(nu(a_i) + i/e).
class EisensteinRootOracle : public Oracle {
 public:
  EisensteinRootOracle(Poly min_poly, long e);
  Value evaluate(const Poly& f) const override;
  const FieldSpec& field() const override { return m_.spec(); }
  std::string kind() const override { return "eisenstein"; }
  const Poly& min_poly() const { return m_; }
  long ramification() const { return e_; }

 private:
  Poly m_;
  long e_;
};

/// One approximation theta_n of a series root together with a guaranteed
/// lower bound for nu(theta - theta_n); an infinite frontier means exact.
struct Approximation {
  FieldElement theta;
  Value frontier;
};

class SeriesSource {
 public:
  virtual ~SeriesSource() = default;
  /// Approximation number n, or nullopt when the source is exhausted.
  virtual std::optional<Approximation> approximation(int n) const = 0;
  /// theta lives in K with t replaced by t^(1/ramification).
  virtual long ramification() const { return 1; }
  virtual std::optional<Value> declared_bound() const { return std::nullopt; }
};

using SourcePtr = std::shared_ptr<const SeriesSource>;

struct SeriesTerm {
  Value exponent;
  Scalar coeff;
};

/// A finite list of terms sum c_q T^q with a truncation frontier.
class ListSource : public SeriesSource {
 public:
  ListSource(const FieldSpec& spec, std::vector<SeriesTerm> terms, Value frontier);
  std::optional<Approximation> approximation(int n) const override;
  long ramification() const override { return ram_; }
  const std::vector<SeriesTerm>& terms() const { return terms_; }
  const Value& frontier() const { return frontier_; }

 private:
  FieldSpec spec_;
  std::vector<SeriesTerm> terms_;
  Value frontier_;
  long ram_ = 1;
  FieldElement theta_;
};

/// A simple root of an irreducible polynomial g, refined by Newton iteration
/// from an approximation a0 with nu(g(a0)) > 2 nu(g'(a0)).
class HenselSource : public SeriesSource {
 public:
  HenselSource(Poly g, FieldElement start, int max_steps = 14);
  std::optional<Approximation> approximation(int n) const override;
  const Poly& min_poly() const { return g_; }
  const FieldElement& start() const { return start_; }

 private:
  Poly g_;
  Poly dg_;
  FieldElement start_;
  int max_steps_;
  mutable std::mutex mu_;
  mutable std::vector<Approximation> cache_;
};

/// theta = sum_k u^(1+p_k) v^(-q_k) over F_p(u, v), where p_k/q_k are the
/// convergents of sqrt(2) from below. The term values increase to 1.
class Sqrt2ConvergentSource : public SeriesSource {
 public:
  explicit Sqrt2ConvergentSource(const FieldSpec& spec, int max_terms = 14);
  std::optional<Approximation> approximation(int n) const override;
  std::optional<Value> declared_bound() const override { return Value(1); }
  /// Term number k as an element of K.
  FieldElement term(int k) const;
  Value term_value(int k) const;

 private:
  FieldSpec spec_;
  int max_terms_;
  std::vector<std::pair<Integer, Integer>> pq_;
};

/// nu'(f) = nu(f(theta)) for theta given by a series source. Returned values
/// are certified; if no approximation certifies, PrecisionExhausted is raised.
class SeriesOracle : public Oracle {
 public:
  SeriesOracle(const FieldSpec& spec, SourcePtr source, std::string label = "series");
  Value evaluate(const Poly& f) const override;
  const FieldSpec& field() const override { return spec_; }
  std::string kind() const override { return label_; }
  std::optional<Value> declared_bound() const override { return source_->declared_bound(); }
  const SourcePtr& source() const { return source_; }

 private:
  FieldSpec spec_;
  SourcePtr source_;
  std::string label_;
};

/// Scripted target: polynomials are expanded in a declared limit polynomial,
/// which receives a declared value; coefficients are valued by the inner
/// oracle. This is a fixture for bounded traces, not a valuation in general.
class ScriptedLimitOracle : public Oracle {
 public:
  ScriptedLimitOracle(OraclePtr inner, Poly limit, Value value);
  Value evaluate(const Poly& f) const override;
  const FieldSpec& field() const override { return inner_->field(); }
  std::string kind() const override { return "scripted"; }
  std::optional<Value> declared_bound() const override { return inner_->declared_bound(); }
  const OraclePtr& inner() const { return inner_; }
  const Poly& limit() const { return limit_; }
  const Value& limit_value() const { return value_; }

 private:
  OraclePtr inner_;
  Poly limit_;
  Value value_;
};

struct AxiomReport {
  bool passed = true;
  int samples = 0;
  int skipped = 0;
  std::optional<std::pair<Poly, Poly>> witness;
  std::string failure;
};

/// Randomized multiplicativity and ultrametric checks on products of small
/// linear and quadratic factors.
AxiomReport axioms_selftest(const Oracle& oracle, int samples, uint64_t seed);

/// Element b of K with nu(a - b) >= w and a short representation.
FieldElement truncate_element(const FieldElement& a, const Value& w);

}  // namespace keypoly
