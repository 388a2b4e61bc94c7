#pragma once
// Evaluation over the standard model: variables range over the naturals,
// A(s,t,u) holds iff s+t=u, M(s,t,u) iff s*t=u, and -> is material.
//
// Exact evaluation is possible for Delta0 formulas (all quantifiers bounded).
// Sigma1 formulas get a bounded witness search: the result is either a least
// witness or "false up to the cap" — never a flat "false".  Anything else is
// unsupported and refused.

#include <cstdint>
#include <functional>
#include <map>

#include "relic/syntax.hpp"

namespace relic {

using Assignment = std::map<std::string, std::uint64_t>;

// Unbound variable, or an intermediate value overflowing the safe range.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formula class outside what evaluation supports (refusal, not an error in
// the input's grammar).
struct EvalUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t eval_term(const TermPtr& t, const Assignment& env);

// Pre: every quantifier in f is bounded (classify(f) == Delta0 once the
// assignment covers the free variables).  Throws EvalUnsupported otherwise.
bool eval_delta0(const FormulaPtr& f, const Assignment& env);

struct EvalResult {
  enum class Kind { True, False, TrueWithWitness, FalseUpToBound };
  Kind kind;
  std::uint64_t value = 0;  // TrueWithWitness: least witness; FalseUpToBound: cap

  bool truthy() const {
    return kind == Kind::True || kind == Kind::TrueWithWitness;
  }
};

// Delta0 -> True/False.  Sigma1 -> TrueWithWitness (least witness <= cap) or
// FalseUpToBound(cap).  Other -> EvalUnsupported.
EvalResult eval(const FormulaPtr& f, const Assignment& env, std::uint64_t sigma1_cap);

// Three-valued spot check: unbounded quantifiers are searched up to `cap`
// only, so an unbounded All can never be confirmed (at best Unknown) and an
// unbounded Ex can never be refuted.  True/False answers are conclusive.
enum class Tri { True, False, Unknown };
Tri eval_trivalent(const FormulaPtr& f, const Assignment& env, std::uint64_t cap);

// Runs fn on every assignment of f's free variables over 0..max_val.
// Returns false (stopping early) iff fn returns false on some assignment.
bool for_each_assignment(const FormulaPtr& f, std::uint64_t max_val,
                         const std::function<bool(const Assignment&)>& fn);

// No assignment of free variables over 0..max_val makes f conclusively false
// under the trivalent check.  This is the soundness sweep primitive: a
// produced theorem that fails it is definitely wrong.
bool never_refuted(const FormulaPtr& f, std::uint64_t max_val, std::uint64_t cap);

// Both formulas are Delta0 over a shared free-variable set and agree on every
// assignment over 0..max_val.
bool delta0_equivalent(const FormulaPtr& a, const FormulaPtr& b, std::uint64_t max_val);

}  // namespace relic
