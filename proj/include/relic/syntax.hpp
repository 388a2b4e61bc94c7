#pragma once
// Terms and formulas of relational arithmetic, with two surface grammars:
//
//   relational: terms {0, S(t), variables}, atoms {t = t, t <= t, A(t,t,t), M(t,t,t)}
//   classical:  terms {0, S(t), t + t, t * t, variables}, atoms {t = t, t <= t}
//
// A(s,t,u) reads "s + t = u" and M(s,t,u) reads "s * t = u".
// Connectives: bot, &, |, ->; !phi abbreviates (phi -> bot) and is not a
// distinct node.  Quantifiers: All x . phi, Ex x . phi, and the bounded forms
// All x <= t . phi / Ex x <= t . phi, which are first-class nodes with fixed
// expansions (see expand_bounded).  Formulas are immutable and shared.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace relic {

// Raised when input *text* is not well-formed (lexing/grammar errors).
struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an *operation on ASTs* is ill-formed: invalid variable names,
// binder bounds mentioning the binder, capturing substitutions, bad arities.
struct FormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermTag { Var, Zero, Succ, Plus, Times };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermTag tag;
  std::string name;  // Var
  TermPtr a, b;      // Succ: a; Plus/Times: a, b

  static TermPtr var(const std::string& name);  // validates [a-z][a-z0-9_]*
  static TermPtr zero();
  static TermPtr succ(TermPtr t);
  static TermPtr plus(TermPtr l, TermPtr r);
  static TermPtr times(TermPtr l, TermPtr r);
  static TermPtr numeral(std::uint64_t n);  // S^n(0)
};

bool term_equal(const TermPtr& a, const TermPtr& b);
// Value of a pure successor chain over zero, if the term is one.
std::optional<std::uint64_t> numeral_value(const TermPtr& t);
bool term_mentions(const TermPtr& t, const std::string& var);
void collect_term_vars(const TermPtr& t, std::set<std::string>& out);
bool term_has_arith(const TermPtr& t);  // contains + or *
// Depth: variables and 0 have depth 0; S, +, * add one to the deepest child.
int term_depth(const TermPtr& t);
// Capture-free by construction (terms bind nothing).
TermPtr term_subst(const TermPtr& t, const std::string& var, const TermPtr& repl);
std::string to_string(const TermPtr& t);

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class AtomTag { Eq, Le, A, M };
enum class FormulaTag { Atom, Bot, And, Or, Imp, Forall, Exists, BForall, BExists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaTag tag;
  AtomTag atom{};             // Atom
  std::vector<TermPtr> args;  // Atom: 2 for Eq/Le, 3 for A/M
  FormulaPtr l, r;            // And/Or/Imp: both; quantifiers: l is the body
  std::string var;            // quantifiers
  TermPtr bound;              // BForall/BExists only

  static FormulaPtr atom_eq(TermPtr s, TermPtr t);
  static FormulaPtr atom_le(TermPtr s, TermPtr t);
  static FormulaPtr atom_add(TermPtr s, TermPtr t, TermPtr u);  // s + t = u
  static FormulaPtr atom_mul(TermPtr s, TermPtr t, TermPtr u);  // s * t = u
  static FormulaPtr bot();
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr imp(FormulaPtr l, FormulaPtr r);
  // Notations, not constructors: neg(f) = imp(f, bot()),
  // iff(a,b) = conj(imp(a,b), imp(b,a)).
  static FormulaPtr neg(FormulaPtr f);
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(const std::string& x, FormulaPtr body);
  static FormulaPtr exists(const std::string& x, FormulaPtr body);
  // Pre: the binder variable must not occur in its own bound.
  static FormulaPtr bforall(const std::string& x, TermPtr bound, FormulaPtr body);
  static FormulaPtr bexists(const std::string& x, TermPtr bound, FormulaPtr body);
};

bool is_neg(const FormulaPtr& f);  // Imp(_, Bot)

std::set<std::string> free_vars(const FormulaPtr& f);
bool mentions_free(const FormulaPtr& f, const std::string& var);

// Replaces free occurrences of `var` by `repl`.  Throws FormError if a binder
// would capture a variable of `repl` at an occurrence being substituted.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& repl);

// Equality up to renaming of bound variables; bounded quantifiers only match
// bounded quantifiers of the same kind.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);
bool term_alpha_equal(const TermPtr& a, const TermPtr& b,
                      const std::vector<std::pair<std::string, std::string>>& env);

// Fixed expansions of the bounded quantifiers, applied recursively:
//   All x <= t . phi  =>  All x . (!(x <= t) | phi)
//   Ex  x <= t . phi  =>  Ex  x . (x <= t & phi)
FormulaPtr expand_bounded(const FormulaPtr& f);

// The equality the proof checker uses on stated conclusions: bounded
// quantifiers are transparent notation, and bound variable names are ignored.
bool kernel_equal(const FormulaPtr& a, const FormulaPtr& b);

// Vocabulary checks.  Relational formulas contain no + or * anywhere;
// classical formulas use only = and <= atoms (A and M are absent).
bool is_relational(const FormulaPtr& f);
bool is_classical(const FormulaPtr& f);

bool is_sentence(const FormulaPtr& f);

// Syntactic class, judged on the sugared form: Delta0 formulas have bounded
// quantifiers only; Sigma1 formulas are a single unbounded Ex over a Delta0
// body; everything else is Other.
enum class FormulaClass { Delta0, Sigma1, Other };
FormulaClass classify(const FormulaPtr& f);

// Renames binders so that every binder is distinct from every free variable
// and from every other binder.  Deterministic: a clashing binder x becomes
// x_1, x_2, ... (first unused).  Alpha-equal to the input.
FormulaPtr hygienize(const FormulaPtr& f);

// Picks a variable name not in `used` (and inserts it): `base` itself if
// free, else base_1, base_2, ...
std::string fresh_var(const std::string& base, std::set<std::string>& used);

std::string to_string(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

enum class ParseMode { Relational, Classical };

// Both parsers reject tokens outside their grammar (SyntaxError).  Numeric
// literals are sugar for successor chains and are capped at 1000000.
// Parsed formulas are hygienized (see above).
TermPtr parse_term(const std::string& text, ParseMode mode);
FormulaPtr parse_formula(const std::string& text, ParseMode mode);

}  // namespace relic
