#include "keypoly/augment.hpp"

#include <algorithm>
#include <map>

#include "keypoly/error.hpp"
#include "keypoly/graded.hpp"

namespace keypoly {

std::optional<Defect> detect_defect(const Poly& h, const KeyChain& chain, const Oracle& oracle) {
  if (h.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "defect of zero");
  Value top = chain.top_truncation(h);
  Value target = oracle.evaluate(h);
  if (top < target) return Defect{chain.length(), top, target};
  return std::nullopt;
}

AugmentReport augment_step(KeyChain& chain, const Oracle& oracle, const Poly& h, uint64_t seed, int degree_bound) {
  int ell = chain.length();
  const Level& L = chain.top();
  if (L.beta.is_infinite()) throw Error(ErrorKind::InvalidInput, "chain already ends with an infinite value");
  AugmentReport rep;
  rep.witness = h;
  rep.level = ell;
  rep.witness_before = chain.top_truncation(h);
  GradedElement g = initial_form(chain, h, ell);
  rep.support = g.support;
  TowerPtr F = L.field_before;
  rep.residual = g.reduced;
  rep.residual_str = F->pstr(g.reduced);
  rep.abar = L.abar;
  Factorization fa = factor_residual(*F, g.reduced, seed, degree_bound);
  std::optional<Poly> chosen;
  Value chosen_value;
  for (const auto& fe : fa.factors) {
    Poly Q = integral_relation_lift(chain, fe.factor);
    Value below = chain.top_truncation(Q);
    Value target = oracle.evaluate(Q);
    if (target > below) {
      ++rep.passing_factors;
      if (!chosen) {
        chosen = Q;
        chosen_value = target;
        rep.factor = fe.factor;
      }
    }
  }
  if (!chosen) throw Error(ErrorKind::NoVanishingFactor, "no residual factor of " + rep.residual_str + " lifts to a key polynomial");
  if (rep.passing_factors > 1)
    throw Error(ErrorKind::NoVanishingFactor, "several residual factors of " + rep.residual_str + " pass the lift test");
  rep.factor_str = F->pstr(rep.factor);
  rep.d = int(rep.factor.size()) - 1;
  rep.alpha = rep.d * int(rep.abar);
  rep.Q = *chosen;
  rep.beta = chosen_value;
  if (rep.alpha == 1) rep.z = rep.Q - L.Q;
  chain.append(rep.Q, rep.beta);
  rep.witness_after = chain.top_truncation(h);
  return rep;
}

const char* case_name(AlphaOneCase c) {
  switch (c) {
    case AlphaOneCase::Case1: return "Case1";
    case AlphaOneCase::Case2a: return "Case2a";
    case AlphaOneCase::Case2b: return "Case2b";
  }
  return "?";
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Complete: return "Complete";
    case RunStatus::OutsideGamma1: return "OutsideGamma1";
    case RunStatus::StallDetected: return "StallDetected";
    case RunStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

namespace {

class ProbeSet {
 public:
  ProbeSet(const Oracle& oracle, const std::vector<Poly>& probes) : oracle_(oracle), probes_(probes) {
    for (size_t i = 0; i < probes_.size(); ++i)
      if (!probes_[i].is_zero()) order_.push_back(i);
    std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) { return probes_[a].degree() < probes_[b].degree(); });
  }

  std::optional<Poly> witness(const KeyChain& chain) {
    for (size_t i : order_) {
      auto it = cache_.find(i);
      if (it == cache_.end()) it = cache_.emplace(i, oracle_.evaluate(probes_[i])).first;
      if (chain.top_truncation(probes_[i]) < it->second) return probes_[i];
    }
    return std::nullopt;
  }

 private:
  const Oracle& oracle_;
  const std::vector<Poly>& probes_;
  std::vector<size_t> order_;
  std::map<size_t, Value> cache_;
};

AlphaOneResult refine_impl(KeyChain& chain, const Oracle& oracle, ProbeSet& probes, const Budgets& budgets, int tail,
                           int allowance) {
  AlphaOneResult res;
  for (;;) {
    const Level& T = chain.top();
    if (T.beta.is_infinite()) {
      res.kind = AlphaOneCase::Case1;
      res.reason = "infinite value reached";
      return res;
    }
    if (T.beta > budgets.value_threshold) {
      res.kind = AlphaOneCase::Case2a;
      res.reason = "value " + T.beta.str() + " exceeds the threshold " + budgets.value_threshold.str();
      return res;
    }
    if (tail >= budgets.stall_window) {
      // a bounded increasing sequence cannot live in a discrete group
      bool discrete = chain.group(chain.length()).rank() <= 1;
      res.kind = discrete ? AlphaOneCase::Case2a : AlphaOneCase::Case2b;
      res.reason = std::to_string(tail) + " steps with values below " + budgets.value_threshold.str() +
                   (discrete ? " in a discrete value group" : " in a dense value group");
      return res;
    }
    auto w = probes.witness(chain);
    if (!w) {
      res.kind = AlphaOneCase::Case1;
      res.reason = "no defective probe remains";
      return res;
    }
    if (int(res.steps.size()) >= allowance) {
      res.kind = AlphaOneCase::Case2a;
      res.budget_hit = true;
      res.reason = "step budget exhausted";
      return res;
    }
    AugmentReport rep = augment_step(chain, oracle, *w, budgets.seed, budgets.degree_bound);
    res.steps.push_back(rep);
    if (rep.alpha > 1) {
      res.kind = AlphaOneCase::Case1;
      res.reason = "maximal element reached; next step has alpha " + std::to_string(rep.alpha);
      return res;
    }
    ++tail;
  }
}

}  // namespace

AlphaOneResult refine_alpha_one(KeyChain& chain, const Oracle& oracle, const std::vector<Poly>& probes,
                                const Budgets& budgets, int tail_length, int step_allowance) {
  ProbeSet ps(oracle, probes);
  return refine_impl(chain, oracle, ps, budgets, tail_length, step_allowance);
}

RunResult run(const Oracle& oracle, const std::vector<Poly>& probes, const Budgets& budgets) {
  if (probes.empty()) throw Error(ErrorKind::InvalidInput, "probe list is empty");
  const FieldSpec& spec = oracle.field();
  RunResult res;
  res.declared_bound = oracle.declared_bound();
  res.chain = KeyChain(spec, oracle.evaluate(Poly::x(spec)));
  ProbeSet ps(oracle, probes);
  KeyChain& chain = res.chain;
  int steps = 0;
  for (;;) {
    if (chain.is_complete()) {
      res.status = RunStatus::Complete;
      res.infinite_top = true;
      res.stop_reason = "infinite value reached";
      return res;
    }
    auto w = ps.witness(chain);
    if (!w) {
      res.status = RunStatus::Complete;
      res.stop_reason = "every probe matches the target";
      return res;
    }
    if (steps >= budgets.max_steps) {
      res.status = RunStatus::BudgetExhausted;
      res.stop_reason = "step budget of " + std::to_string(budgets.max_steps) + " exhausted";
      return res;
    }
    AugmentReport rep = augment_step(chain, oracle, *w, budgets.seed, budgets.degree_bound);
    res.trace.push_back(rep);
    ++steps;
    if (rep.alpha != 1) continue;
    TailRecord tail;
    tail.first_step = steps;
    AlphaOneResult r = refine_impl(chain, oracle, ps, budgets, 1, budgets.max_steps - steps);
    for (auto& s : r.steps) res.trace.push_back(std::move(s));
    steps += int(r.steps.size());
    tail.length = 1 + int(r.steps.size()) - (r.kind == AlphaOneCase::Case1 && !r.steps.empty() && r.steps.back().alpha > 1);
    tail.kind = r.kind;
    res.tails.push_back(tail);
    if (r.kind == AlphaOneCase::Case2b) {
      res.status = RunStatus::StallDetected;
      res.stop_reason = r.reason;
      return res;
    }
    if (r.budget_hit) {
      res.status = RunStatus::BudgetExhausted;
      res.stop_reason = r.reason;
      return res;
    }
    if (r.kind == AlphaOneCase::Case2a) {
      // keep augmenting; the tail is evidence only
      while (true) {
        if (chain.is_complete()) break;
        if (chain.top().beta > budgets.value_threshold) {
          res.status = RunStatus::BudgetExhausted;
          res.stop_reason = "value " + chain.top().beta.str() + " exceeds the threshold " + budgets.value_threshold.str();
          return res;
        }
        auto w2 = ps.witness(chain);
        if (!w2 || steps >= budgets.max_steps) break;
        AugmentReport more = augment_step(chain, oracle, *w2, budgets.seed, budgets.degree_bound);
        res.trace.push_back(more);
        ++steps;
        if (more.alpha != 1) break;
        ++res.tails.back().length;
      }
    }
  }
}

}  // namespace keypoly
