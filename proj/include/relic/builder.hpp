#pragma once

// Programmatic construction of proof scripts.
//
// A ScriptBuilder accumulates steps and computes each step's conclusion
// eagerly through the same schema engine the checker uses, so a malformed
// derivation fails at the point of construction rather than at check time.
// On top of the raw step constructors it provides derived combinators for
// the moves that differ between the two profiles (weakening, transitivity,
// conjoining, case analysis) and for common equality/quantifier maneuvers.
//
// Step handles are 0-based indices into the script under construction.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relic/kernel.hpp"

namespace relic {

class ScriptBuilder {
 public:
  explicit ScriptBuilder(Profile profile, TheoryKind theory = TheoryKind::None);

  // --- raw steps -----------------------------------------------------------
  std::size_t axiom(const std::string& id, Bindings bindings);
  std::size_t theory_step(const std::string& name, std::vector<std::uint64_t> params = {});
  std::size_t rule(const std::string& id, std::vector<std::size_t> premises,
                   Bindings bindings = {});
  // Declares a named assumption and returns the step that references it.
  std::size_t assume(const std::string& id, FormulaPtr f);
  // References an already-declared assumption.
  std::size_t hyp(const std::string& id);

  // --- profile-independent combinators --------------------------------------
  std::size_t identity(FormulaPtr phi);                    // |- phi -> phi
  std::size_t mp(std::size_t p, std::size_t imp);          // phi, phi->psi |- psi
  std::size_t weaken(std::size_t i, FormulaPtr psi);       // phi |- psi -> phi
  std::size_t trans(std::size_t i, std::size_t j);         // a->b, b->c |- a->c
  std::size_t adjoin(std::size_t i, std::size_t j);        // phi, psi |- phi & psi
  std::size_t and_intro(std::size_t i, std::size_t j);     // c->a, c->b |- c -> a&b
  std::size_t or_elim(std::size_t i, std::size_t j);       // a->c, b->c |- a|b -> c
  std::size_t morg(std::size_t i);                         // !a | !b |- !(a & b)
  std::size_t dni(std::size_t i);                          // phi |- !!phi
  std::size_t com(std::size_t i);                          // s=t |- t=s
  // s=t, phi[x:=s] |- phi[x:=t]  (phi is the template with x free)
  std::size_t aux(std::size_t eq, std::size_t inst, const std::string& x, FormulaPtr phi);
  // phi |- All x . phi   (x must not be free in any assumption)
  std::size_t gen(std::size_t i, const std::string& x);
  // All x . phi |- phi[x:=t]
  std::size_t inst(std::size_t i, TermPtr t);
  // Runs gen+inst for each listed variable, left to right.  A substituted
  // term must not mention a variable that is instantiated later in the list.
  std::size_t instantiate(std::size_t i,
                          const std::vector<std::pair<std::string, TermPtr>>& subs);
  // phi[x:=t] |- Ex x . phi
  std::size_t ex_intro(std::size_t i, const std::string& x, FormulaPtr phi, TermPtr t);
  // phi -> chi |- (Ex x . phi) -> chi   (x not free in chi or assumptions)
  std::size_t ex_elim(std::size_t i, const std::string& x);
  // phi (a disjunct of `big`) ... |- phi -> big  (big is a left-nested |)
  std::size_t imp_into_disjunction(FormulaPtr big, FormulaPtr disjunct);
  // d1->c, ..., dk->c |- (d1 | ... | dk) -> c   (left-nested)
  std::size_t fold_or_elim(const std::vector<std::size_t>& cases);
  // phi[x:=t] |- x=t -> phi   (the equality-transfer derived rule)
  std::size_t aux_imp(std::size_t i, const std::string& x, FormulaPtr phi, TermPtr t);

  // --- combinators available only in the stronger profile --------------------
  std::size_t contrapose(std::size_t i);                   // a->b |- !b -> !a
  std::size_t suffix_with(std::size_t i, FormulaPtr chi);  // a->b |- (b->chi)->(a->chi)
  std::size_t prefix_with(std::size_t i, FormulaPtr chi);  // a->b |- (chi->a)->(chi->b)
  std::size_t red(FormulaPtr phi, FormulaPtr chi);         // |- !phi -> (phi -> chi)
  std::size_t weakening_strong(FormulaPtr phi, FormulaPtr psi);  // |- phi->(psi->phi&psi)
  std::size_t exp(std::size_t i);                          // a&b->c |- a->(b->c)
  // phi | !phi, phi -> (psi -> chi) |- phi & psi -> chi
  std::size_t crisp_import(std::size_t cert, std::size_t i);
  // a | !a, b | !b |- (a|b) | !(a|b)
  std::size_t crisp_or(std::size_t cert_a, std::size_t cert_b);

  // --- access ---------------------------------------------------------------
  FormulaPtr conc(std::size_t i) const;    // stated conclusion of step i
  FormulaPtr conc_x(std::size_t i) const;  // ... with bounded quantifiers expanded
  std::size_t size() const { return script_.steps.size(); }
  std::size_t last() const;
  const ProofScript& script() const { return script_; }
  ProofScript take() { return std::move(script_); }
  // Kernel-checks the whole script and returns the judgment.
  Judgment finish() const;

 private:
  std::size_t push(Step st);
  std::vector<FormulaPtr> assumption_formulas() const;

  ProofScript script_;
};

}  // namespace relic
