#pragma once
// The trusted proof checker.
//
// Proofs are linear scripts: each step names an axiom schema, a theory axiom
// (or declared assumption), or an inference rule applied to earlier steps,
// and states its conclusion.  The checker recomputes every conclusion from
// the schema table and compares it with the stated one, where comparison
// ignores bound-variable names and treats the bounded quantifiers as
// notation (kernel_equal).  Nothing is unified or searched.
//
// Two profiles of the propositional base are supported:
//
//   QL0   axioms: identity, and-elim-l/r, or-intro-l/r
//         rules:  mp, weakening, assertion, trans-imp, and-intro, or-elim, morg
//
//   QSLw  axioms: identity, and-elim-l/r, or-intro-l/r, and-intro-ax,
//                 or-elim-ax, weakening-ax, bot-elim
//         rules:  mp, adj, tone-imp, assertion
//
// Both share the quantifier/equality layer: axioms forall-inst, exists-intro,
// eq-id, eq-com, eq-trans, eqprin-term, eqprin-formula; rules forall-intro
// and exists-elim (with the usual freshness side conditions, extended to the
// script's assumptions).

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "relic/syntax.hpp"

namespace relic {

enum class Profile { QL0, QSLw };
enum class TheoryKind { None, R, Q };

std::string to_string(Profile p);
std::string to_string(TheoryKind t);

// ---------------------------------------------------------------------------
// Steps and scripts
// ---------------------------------------------------------------------------

enum class BindKind { TermB, FormulaB, VarB };

struct Binding {
  BindKind kind;
  TermPtr term;
  FormulaPtr formula;
  std::string var;

  static Binding of_term(TermPtr t);
  static Binding of_formula(FormulaPtr f);
  static Binding of_var(std::string v);
};

using Bindings = std::map<std::string, Binding>;

enum class StepKind { Axiom, Theory, Rule };

struct Step {
  StepKind kind = StepKind::Axiom;
  std::string id;                     // axiom/rule id, theory axiom name, or assumption id
  std::vector<std::uint64_t> params;  // theory axiom numeral parameters
  std::vector<std::size_t> premises;  // rule premises, 0-based step indices
  Bindings bindings;
  FormulaPtr conclusion;              // stated conclusion
};

struct ProofScript {
  Profile profile = Profile::QL0;
  TheoryKind theory = TheoryKind::None;
  std::vector<std::pair<std::string, FormulaPtr>> assumptions;
  std::vector<Step> steps;

  FormulaPtr theorem() const { return steps.empty() ? nullptr : steps.back().conclusion; }
};

struct Judgment {
  Profile profile;
  TheoryKind theory;
  std::vector<FormulaPtr> assumptions;
  FormulaPtr theorem;
};

// A proof that does not check.  `step` is the offending 0-based step index,
// or npos for script-level problems.
struct CheckError : std::runtime_error {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::size_t step;
  explicit CheckError(const std::string& msg, std::size_t step_index = npos)
      : std::runtime_error(msg), step(step_index) {}
};

// Verifies the whole script; returns its judgment.
Judgment check(const ProofScript& script);

// ---------------------------------------------------------------------------
// Schema engine (also used by untrusted producers to fill in conclusions)
// ---------------------------------------------------------------------------

struct SchemaInfo {
  // Required bindings in canonical order.
  std::vector<std::pair<std::string, BindKind>> binds;
  // Number of premises (rules only).
  std::size_t arity = 0;
};

// nullptr when the id does not exist in the given profile.
const SchemaInfo* axiom_info(Profile profile, const std::string& id);
const SchemaInfo* rule_info(Profile profile, const std::string& id);

FormulaPtr compute_axiom(Profile profile, const std::string& id, const Bindings& b);

// `premises` are the premise conclusions with bounded quantifiers expanded.
// `assumptions` are the script's assumption formulas (for side conditions).
FormulaPtr compute_rule(Profile profile, const std::string& id,
                        const std::vector<FormulaPtr>& premises, const Bindings& b,
                        const std::vector<FormulaPtr>& assumptions);

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

// Replaces outer's assumption `assume_id` by the proof `inner` of the same
// judgment shape: inner.theorem must match the assumption formula, and the
// profile/theory must agree.  Step references are renumbered; inner's own
// assumptions are carried over (outer ids must not clash).
ProofScript compose(const ProofScript& outer, const std::string& assume_id,
                    const ProofScript& inner);

}  // namespace relic
