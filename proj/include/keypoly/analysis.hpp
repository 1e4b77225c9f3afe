#pragma once

#include <optional>
#include <string>
#include <vector>

#include "keypoly/chain.hpp"

namespace keypoly {

/// Largest derivative ratio of a key polynomial.
struct EffectiveBound {
  int level = 0;
  int b = 1;
  /// b = p^e; -1 when b is not a power of p.
  int e = 0;
  std::vector<int> I_max;
  Value ratio;
  /// (beta_i - nu'(d_b Q_i)) for b = b_i, i.e. ratio * b.
  Value slope;
  /// Every nonzero derivative of Q_i has value >= 0.
  bool derivatives_nonnegative = true;
  /// Every member of I_max is a power of p.
  bool p_powers = true;
};

EffectiveBound effective_bound(const KeyChain& chain, int i);

struct DerivativeRow {
  int b = 0;
  Value value;
  Value bound;
  bool holds = true;
  bool equality = false;
};

/// A named check; applicable == false means the hypotheses were not met.
struct Check {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

struct DerivativeReport {
  int level = 0;
  EffectiveBound bound;
  Value value;
  std::vector<int> support;
  std::vector<DerivativeRow> rows;
  /// b(i, h) = b_i p^e for the minimizing expansion term; absent when the
  /// constant term alone attains the value.
  std::optional<int> predicted_b;
  /// Largest e with p^e dividing every index in the support.
  std::optional<int> support_exponent;
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Orders probed by default: p^k b_i up to deg h, 1..min(8, deg h), and 0.
std::vector<int> default_derivative_probes(const KeyChain& chain, const Poly& h, int i);
DerivativeReport derivative_value_report(const KeyChain& chain, const Poly& h, int i,
                                         const std::vector<int>& probes = {});

struct CharacterPair {
  int level = 0;
  int delta = 0;
  /// -1 encodes infinity.
  int epsilon = -1;
  Value value;
  Value plus;
  /// Pivotal vertex (index, coefficient value).
  std::pair<int, Value> pivotal;
  /// Characteristic vertex of the next level: (index, coefficient value there).
  std::optional<std::pair<int, Value>> characteristic;
  bool epsilon_infinite() const { return epsilon < 0; }
};

CharacterPair delta_epsilon(const KeyChain& chain, const Poly& h, int i);

struct CharacterTrace {
  std::vector<CharacterPair> pairs;
  /// Checks between consecutive levels, tagged with the lower level.
  std::vector<std::pair<int, Check>> checks;
  bool all_passed() const;
};

/// Characters at levels 1..length, stopping after the first level with delta = 0.
CharacterTrace character_trace(const KeyChain& chain, const Poly& h);

/// Chain-wide derivative facts: p-power b_i, nonnegative derivative values,
/// strictly increasing ratios, and b non-increasing across alpha = 1 steps.
std::vector<Check> chain_derivative_checks(const KeyChain& chain);

/// nu_p(n) with the convention nu_p(n) = 1 when p = 1; -1 stands for n = 0.
int p_adic_order(long n, uint64_t p);
bool is_p_power(long n, uint64_t p);

}  // namespace keypoly
