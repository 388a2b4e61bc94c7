#pragma once

// Derivation generators over the Q-style theory in the stronger profile.
//
// The central entry point is q_proves_r: for every finitary axiom of the
// R-style theory it emits a closed proof script, over theory Q~ in profile
// QSLw, whose theorem is exactly that axiom instance.  Numeral-indexed
// families are produced by script generation per parameter — the induction
// lives in the generator, never in the kernel, so every emitted script is a
// plain finite derivation the checker replays step by step.
//
// The step-level helpers are exposed so the template catalog and the tests
// can reuse the same maneuvers.  All of them append steps to a builder that
// must be over theory Q~ in profile QSLw, and they assume an assumption-free
// script (the quantifier rules they use demand freshness against
// assumptions).
//
//   derive_le_succ_intro / derive_le_succ_elim
//       The two halves of the order-shift equivalence p<=q <-> S(p)<=S(q).
//       The terms must not mention the variables 'z' or 'u' (the canonical
//       bound variables of the order and recursion axioms).
//
//   derive_case_split
//       Concludes phi (with free variable x) from a step proving
//       phi[x:=0] and a step proving phi[x:=S(y)], by case analysis on
//       x=0 | !(x=0).  Requires x != 'y' and that y does not occur free
//       in phi.
//
//   derive_eq_transfer_conj
//       The conjunctive form of equality transfer,
//       s=t & phi[x:=s] -> phi[x:=t], obtained from the curried axiom form
//       and the equality-crispness axiom of Q~.
//
//   derive_add_fact / derive_mul_fact
//       Closed numeral facts |- A(m,n,m+n) and |- M(m,n,m*n).

#include <cstdint>
#include <string>
#include <vector>

#include "relic/builder.hpp"

namespace relic {

// Largest numeral parameter q_proves_r accepts.  The order-axiom scripts
// grow quadratically in the parameter; beyond this cap the generator
// refuses rather than emit an unreviewably large artifact.
inline constexpr std::uint64_t kDeriveParamCap = 64;

std::size_t derive_le_succ_intro(ScriptBuilder& b, const TermPtr& p, const TermPtr& q);
std::size_t derive_le_succ_elim(ScriptBuilder& b, const TermPtr& p, const TermPtr& q);

std::size_t derive_case_split(ScriptBuilder& b, std::size_t at_zero, std::size_t at_succ,
                              const std::string& x, const std::string& y,
                              const FormulaPtr& phi);

std::size_t derive_eq_transfer_conj(ScriptBuilder& b, const TermPtr& s, const TermPtr& t,
                                    const std::string& x, const FormulaPtr& phi);

std::size_t derive_add_fact(ScriptBuilder& b, std::uint64_t m, std::uint64_t n);
std::size_t derive_mul_fact(ScriptBuilder& b, std::uint64_t m, std::uint64_t n);

// Emits a closed QSLw/Q~ proof of the named R-style axiom instance; the
// resulting script checks with no assumptions and its theorem equals
// theory_axiom(TheoryKind::R, name, params).  Throws CheckError for unknown
// names, wrong arity, equal parameters for R~3, or parameters above
// kDeriveParamCap.
ProofScript q_proves_r(const std::string& name, const std::vector<std::uint64_t>& params);

}  // namespace relic
