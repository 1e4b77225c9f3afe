#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "keypoly/chain.hpp"
#include "keypoly/oracle.hpp"

namespace keypoly {

struct Defect {
  int level = 0;
  Value truncated;
  Value target;
};

/// Defect of h at the top level of the chain, if any.
std::optional<Defect> detect_defect(const Poly& h, const KeyChain& chain, const Oracle& oracle);

/// One appended level together with the data that produced it.
struct AugmentReport {
  Poly witness;
  int level = 0;
  std::vector<int> support;
  RPoly residual;
  std::string residual_str;
  RPoly factor;
  std::string factor_str;
  long abar = 1;
  int d = 1;
  int alpha = 1;
  Poly Q;
  Value beta;
  /// Q_{l+1} - Q_l when alpha = 1.
  std::optional<Poly> z;
  Value witness_before;
  Value witness_after;
  int passing_factors = 0;
};

struct Budgets {
  int max_steps = 64;
  Value value_threshold = Value(64);
  /// Number of consecutive alpha = 1 steps after which a bounded tail is classified.
  int stall_window = 8;
  uint64_t seed = 0;
  int degree_bound = 4;
};

/// Builds Q_{l+1} from the residual factorization of in_l(h) and appends it.
AugmentReport augment_step(KeyChain& chain, const Oracle& oracle, const Poly& h, uint64_t seed, int degree_bound = 4);

enum class AlphaOneCase { Case1, Case2a, Case2b };
const char* case_name(AlphaOneCase c);

struct AlphaOneResult {
  AlphaOneCase kind = AlphaOneCase::Case1;
  std::vector<AugmentReport> steps;
  bool budget_hit = false;
  std::string reason;
};

/// Continues an alpha = 1 tail whose first step already ended the chain.
/// tail_length is the number of alpha = 1 steps taken so far in the tail.
AlphaOneResult refine_alpha_one(KeyChain& chain, const Oracle& oracle, const std::vector<Poly>& probes,
                                const Budgets& budgets, int tail_length, int step_allowance);

enum class RunStatus { Complete, OutsideGamma1, StallDetected, BudgetExhausted };
const char* status_name(RunStatus s);

struct TailRecord {
  int first_step = 0;
  int length = 0;
  AlphaOneCase kind = AlphaOneCase::Case1;
};

struct RunResult {
  RunStatus status = RunStatus::Complete;
  KeyChain chain;
  std::vector<AugmentReport> trace;
  std::vector<TailRecord> tails;
  /// True when the chain ends with an infinite value.
  bool infinite_top = false;
  std::string stop_reason;
  std::optional<Value> declared_bound;
};

/// Runs the construction from Q_1 = x until every probe is matched, an
/// infinite value is reached, a stall is detected or the budget runs out.
RunResult run(const Oracle& oracle, const std::vector<Poly>& probes, const Budgets& budgets);

}  // namespace keypoly
