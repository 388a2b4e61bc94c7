#pragma once
// Eliminating + and * from classical bounded formulas.
//
// Input: a classical formula (atoms are = and <=, terms may use + and *) in
// which every quantifier is bounded and every bound is a +/*-free term.
// Output: an equivalent relational bounded formula (no + or * anywhere);
// compound values survive only as A(s,t,u) / M(s,t,u) atoms.
//
// Two modes:
//   * StrictPaper applies three verbatim textbook-style splitting schemes:
//       (1)  t = t1∘t2   =>  (Ex x1 <= t)(Ex x2 <= t)(t = x1∘x2)
//       (2)  t1∘t2 <= t  =>  (Ex x1 <= t)(Ex x2 <= t)(x1∘x2 <= t)
//       (3)  t <= t1∘t2  =>  (Ex x1 <= t)(Ex x2 <= t)(x1 <= t1 & x2 <= t2
//                                                       & t = x1∘x2)
//     Exactly one of the six scheme instances (three schemes, two operators)
//     is an equivalence over the naturals — see equivalence_verdicts, which
//     brute-forces each one and reports a counterexample when it fails.
//     Strict mode exists to exercise the schemes as written and to report
//     what actually happens: runs may loop (detected and diagnosed as a
//     NormalFormError) and completed runs need not preserve meaning.
//   * Corrected applies repaired rules, one atom per step: the chosen atom is
//     replaced by a full relational decomposition that names compound values
//     with fresh bounded witnesses (values are bounded by the atom's other
//     side), scans with a bounded universal when no witness bound exists
//     (t <= t1*t2), and splits on zero where a factor can vanish.  Every
//     corrected rule is an equivalence over the naturals (brute-force checked
//     by equivalence_verdicts and by the semantic-preservation tests).
//
// Termination: every corrected step removes all +/* occurrences of one atom,
// so the step count is bounded by the atom count.  The finer claim — each
// step strictly decreases the formula's depth measure in the Dershowitz–
// Manna multiset order — holds whenever the positions a rule must duplicate
// (the atom's simple side, which becomes a witness bound) are variables or
// 0; the trace records the measure and a decrease flag per step so callers
// can audit it.  Strict mode has no such guarantee; it is guarded by an
// atom-shape repetition check instead.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relic/refuse.hpp"
#include "relic/syntax.hpp"

namespace relic {

enum class RewriteMode {
  StrictPaper,  // the three schemes verbatim; may loop or change meaning
  Corrected,    // repaired equivalences; always terminates, meaning-preserving
};

// Shape of an atomic formula:
//   Simple       no + or * anywhere in the atom's terms
//   AlmostSimple x = t1∘t2 with x a variable and t1, t2 simple — the shape
//                the final A/M replacement consumes directly
//   Complex      anything else
enum class AtomShape { Simple, AlmostSimple, Complex };

// Pre: f is an atom.
AtomShape atom_shape(const FormulaPtr& f);

// The multiset of depths of every term occurrence in the formula: each atom
// argument, each quantifier bound, and every subterm occurrence inside them.
// A variable or 0 has depth 0; S, +, * add one.  measure(x = y+z) is
// {0,0,0,1}: x, y, z, and the + node.
using Measure = std::multiset<int>;
Measure measure(const FormulaPtr& f);

// Dershowitz–Manna multiset ordering on depth multisets:
//   dm_leq(a, b)   holds iff every element with more occurrences in a than in
//                  b is dominated by some strictly larger element with more
//                  occurrences in b than in a.
//   dm_less(a, b)  is the strict version: dm_leq(a, b) and a != b.
bool dm_leq(const Measure& a, const Measure& b);
bool dm_less(const Measure& a, const Measure& b);

// Strict-paper rewriting could not normalize the formula: a scheme
// application reproduced the atom shape it was applied to, no scheme matches
// a complex atom, the step budget ran out, or function symbols survived in
// quantifier bounds.  The message names the offending atom.
struct NormalFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One rewriting step on the leftmost complex atom; std::nullopt when every
// atom is already Simple or AlmostSimple (the formula is ready for the final
// A/M replacement).  Throws RefuseError on inputs outside the supported
// class (see eliminate_functions) and NormalFormError in strict mode when no
// scheme matches the chosen atom.
std::optional<FormulaPtr> rewrite_step(const FormulaPtr& f, RewriteMode mode);

struct RewriteTraceEntry {
  FormulaPtr formula;  // the formula after this step
  Measure after;       // its measure
  bool decreased;      // dm_less(after, measure of the previous formula)
};

// Iterate rewrite_step to a fixpoint, then replace each AlmostSimple residue
// x = t1∘t2 by the relational atom A(t1,t2,x) / M(t1,t2,x) (also traced).
//
// Supported inputs (both modes): bounded formulas classified Delta0 whose
// quantifier bounds are +/*-free, with no + or * inside A/M atom arguments;
// strict mode additionally requires a purely classical formula (no A/M
// atoms).  Atoms whose two sides both contain + or * are refused in
// corrected mode ("unsupported-atom"): neither side can bound a witness for
// the other.  Refusal slugs: "missing-formula", "not-delta0",
// "unsupported-bound", "unsupported-atom", "not-classical".
//
// Corrected mode: total on supported inputs; the result is relational,
// classified Delta0, and equivalent to the input over the naturals.
// Strict mode: raises NormalFormError as described above; a completed run is
// relational Delta0 but is only as sound as the schemes it applied.
FormulaPtr eliminate_functions(const FormulaPtr& f, RewriteMode mode,
                               std::vector<RewriteTraceEntry>* trace = nullptr);

// Brute-force verdict on one rewriting scheme: instantiate it with variable
// arguments, sweep all assignments with values <= bound, and report the
// first disagreement (rendered assignment) if any.
struct EquivalenceVerdict {
  std::string name;           // e.g. "upper-split-plus"
  std::string lhs;            // rendered scheme instance
  std::string rhs;
  bool holds;                 // equivalent over the sweep
  std::string counterexample; // empty when holds
};

// Verdicts for a mode's full rule set.  Strict mode: the six scheme
// instances, of which only upper-split-plus (scheme (3) for +) holds.
// Corrected mode: every rule, all of which hold.
std::vector<EquivalenceVerdict> equivalence_verdicts(RewriteMode mode,
                                                     std::uint64_t bound);

}  // namespace relic
