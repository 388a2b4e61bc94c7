#pragma once
// Proof synthesis: decision-procedure-backed provers over the finite
// relational theory, working in the weak profile.
//
// Three sentence provers cover the decidable fragment:
//
//   prove_true_delta0   closed, bounded-quantifier-only, true   ->  |- phi
//   prove_false_delta0  closed, bounded-quantifier-only, false  ->  |- phi -> bot
//   prove_sigma1        Ex x . (bounded body), true with a witness <= cap
//
// Each consults the evaluator at every recursion node, so exactly one of the
// first two succeeds on any closed bounded sentence, and what it emits is an
// ordinary proof script the checker accepts with no assumptions.
//
// On top of these, build_separator/prove_separator turn a pair of disjoint
// evaluator-defined sets (alpha picks out A = {n : Ex v . alpha(n,v)}, beta
// picks out B likewise) into a single formula phi(x) that is provable at
// members of A and refutable at members of B.
//
// Inputs outside an operation's fragment are *refused*, not mangled: a
// RefuseError carries a stable machine-readable reason slug.

#include <cstdint>
#include <string>

#include "relic/kernel.hpp"
#include "relic/refuse.hpp"
#include "relic/syntax.hpp"

namespace relic {

// Pre: a relational sentence, all quantifiers bounded, true in the standard
// model.  Post: a checkable script proving it (no assumptions).
ProofScript prove_true_delta0(const FormulaPtr& sentence);

// Pre: as above but false.  Post: a script proving sentence -> bot.
ProofScript prove_false_delta0(const FormulaPtr& sentence);

// Pre: a relational sentence Ex x . body with body bounded, true with some
// witness <= witness_cap.  Post: a script proving it.  A true sentence whose
// least witness exceeds the cap is refused ("witness-exhausted") — a refusal,
// not a falsity claim.
ProofScript prove_sigma1(const FormulaPtr& sentence, std::uint64_t witness_cap);

// A pair of bounded formulas with free variables among {x, v}; alpha defines
// A = {n : some v makes alpha(n,v) true}, beta defines B likewise.
struct SeparatorSpec {
  FormulaPtr alpha;
  FormulaPtr beta;
};

// psi(x,v) = !(!alpha(x,v) | Ex u <= v . beta(x,u)); phi(x) = Ex v . psi.
struct SeparatorFormula {
  FormulaPtr psi;
  FormulaPtr phi;
};

// Validates the spec (bounded, relational, free variables within {x, v}) and
// assembles the separating formula.  phi(x) is always a single unbounded
// existential over a bounded body.
SeparatorFormula build_separator(const SeparatorSpec& spec);

enum class SeparatorSide { Pos, Neg };

// Pos: n in A (witness <= cap) -> a proof of phi(n).
// Neg: n in B (witness <= cap) -> a proof of phi(n) -> bot.
// Membership and the disjointness of A and B are oracle-checked over 0..cap
// before any proof is attempted; a violation refuses the whole call.
ProofScript prove_separator(const SeparatorSpec& spec, std::uint64_t n,
                            SeparatorSide side, std::uint64_t cap);

}  // namespace relic
