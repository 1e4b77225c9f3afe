#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "keypoly/analysis.hpp"
#include "keypoly/chain.hpp"
#include "keypoly/oracle.hpp"

namespace keypoly {

struct StallStep {
  int level = 0;
  Value beta;
  int delta = 0;
  /// -1 encodes infinity.
  int epsilon = -1;
  Value value;
  Value plus;
};

/// An alpha = 1 tail Q_base, Q_base+1, ... of a chain together with the
/// characters of a probe h along it.
struct StallTrace {
  KeyChain chain;
  /// Last level before the alpha = 1 tail.
  int base = 1;
  Poly probe;
  /// Least upper bound estimate of the tail values.
  Value bound;
  bool bound_declared = false;
  /// z[k] = Q_{base+k+1} - Q_{base+k}.
  std::vector<Poly> z;
  /// Levels base .. chain.length().
  std::vector<StallStep> steps;
  /// Increasing values, alpha = 1 throughout, non-decreasing nu+ - nu.
  std::vector<Check> checks;

  int top() const { return chain.length(); }
  const StallStep& step(int level) const { return steps.at(size_t(level - base)); }
};

/// Builds the trace of h along the trailing alpha = 1 run of the chain. The
/// bound defaults to the top value when none is declared.
StallTrace stall_trace(const KeyChain& chain, const Poly& h, std::optional<Value> bound = std::nullopt);

struct StableDelta {
  int delta = 0;
  /// delta = p^e; -1 when delta is not a power of p.
  int e = -1;
  int window = 0;
  /// Set when the stable delta contradicts the p-power law.
  std::optional<std::string> violation;
};

/// delta over the last `window` levels of the trace (0 means the whole tail).
/// Throws NotStabilized when those values differ.
StableDelta stable_delta(const StallTrace& trace, int window = 0);

struct CongruenceReport {
  int v = 0;
  int from = 0;
  int level = 0;
  Poly difference;
  Value value;
  Value threshold;
  /// value >= threshold.
  bool holds = false;
  /// value > threshold.
  bool strict = false;
  /// The value came from the oracle rather than the top truncation.
  bool from_oracle = false;
};

/// Compares the level-i coefficient d_v of h with the alternating binomial
/// sum of level-`from` coefficients shifted by Q_i - Q_from.
CongruenceReport coefficient_congruence(const StallTrace& trace, int v, int from, int i, const Oracle* oracle = nullptr);

/// Every admissible (from, i) pair of the trace for one v.
std::vector<CongruenceReport> coefficient_congruences(const StallTrace& trace, int v, const Oracle* oracle = nullptr);

/// Exponent p^e with p^e dividing delta exactly; the admissible v are
/// delta - p^e .. delta.
int congruence_span(const StallTrace& trace);

struct MonomialClass {
  int j = 0;
  Value value;
  /// value + j * bound.
  Value weight;
  bool below_line = false;
  bool below_critical = false;
  bool not_p_power = false;
  bool above_critical = false;
  bool bad = false;
  /// Weight at or above the line: the monomial can be dropped.
  bool removable = false;
};

struct BadMonomialReport {
  int level = 0;
  int e0 = 0;
  long degree = 1;
  Value bound;
  /// 2 p^e0 bound - p^e0 beta_i.
  Value line;
  std::vector<MonomialClass> entries;
  /// Greatest bad index.
  std::optional<int> greatest;
  /// Bad index minimizing (value + j beta_i, -j).
  std::optional<int> lex_min;

  const MonomialClass* entry(int j) const;
};

/// Classifies the monomials a_j Q_i^j, 1 <= j < p^e0, of the level-i
/// expansion of f. Throws GapConditionUnmet when beta_i is too far below the
/// bound.
BadMonomialReport classify_bad_monomials(const Poly& f, const StallTrace& trace, int i, const Value& bound, int e0);

/// beta_i - alpha_base beta_(base-1) > 2 p^e0 (bound - beta_i), with the
/// subtracted term read as 0 when the base is level 1.
bool gap_condition(const StallTrace& trace, int i, const Value& bound, int e0);

struct LimitCandidate {
  int base_level = 0;
  int e0 = 0;
  long degree = 1;
  Value bound;
  Poly poly;
  /// Nonzero coefficients of the base-level expansion, the leading 1 included.
  std::map<int, Poly> coeffs;
  std::map<int, Value> coeff_values;
  Check weakly_affine;
  Check critical_line;
  Check exponent_divisibility;
};

struct LimitStep {
  std::string action;
  int level = 0;
  int j = -1;
  Value value;
  std::string detail;
};

struct LimitReport {
  Poly probe;
  int delta = 0;
  int window = 0;
  int normalization_level = 0;
  int truncation_level = 0;
  int start_level = 0;
  std::vector<LimitStep> steps;
  std::vector<Check> checks;
  std::vector<std::string> violations;
};

struct LimitResult {
  LimitCandidate candidate;
  LimitReport report;
};

struct LimitOptions {
  /// Number of top levels over which defects and characters are certified;
  /// 0 uses the whole tail.
  int window = 0;
  int degree_cap = 64;
  /// Build a candidate even where the construction cannot apply, recording
  /// the violation instead of refusing.
  bool force = false;
  std::optional<Value> bound;
};

/// Selects the minimal-degree probe that stays defective over the window,
/// normalizes and truncates it, strips and removes bad monomials and returns
/// the weakly affine candidate.
LimitResult build_limit_candidate(const KeyChain& chain, const Oracle& oracle, const std::vector<Poly>& probes,
                                  const LimitOptions& options = {});

/// Runs the bad-monomial elimination on a monic f of degree p^e0 in Q_i
/// starting at level i.
LimitResult reduce_to_weakly_affine(const Poly& f, const StallTrace& trace, int i, int e0);

/// Every nonzero exponent of the level-t expansions of f, t in the tail
/// window, is divisible by p^e.
Check exponent_divisibility_check(const Poly& f, const StallTrace& trace, int e, int window = 0);

/// Monotonicity of the greatest and lexicographically minimal bad indices
/// between consecutive levels, stability of their initial coefficients and
/// invariance of the on-line indices.
std::vector<Check> bad_monomial_monotonicity(const Poly& f, const StallTrace& trace, int from, int e0);

/// g with g * a = 1 modulo m.
Poly inverse_mod(const Poly& a, const Poly& m);

}  // namespace keypoly
