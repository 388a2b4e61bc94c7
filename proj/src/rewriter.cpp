#include "relic/rewriter.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "relic/semantics.hpp"

namespace relic {

namespace {

[[noreturn]] void refuse(const std::string& reason, const std::string& detail) {
  throw RefuseError(reason, detail);
}

// --------------------------------------------------------------------------
// Name management.  Witness variables must be fresh against *every* name in
// the formula (free, bound, or shadowed) so a replacement spliced under
// existing binders can never capture or be captured.
// --------------------------------------------------------------------------

void collect_names(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->tag == TermTag::Var) out.insert(t->name);
  collect_names(t->a, out);
  collect_names(t->b, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  for (const auto& arg : f->args) collect_names(arg, out);
  if (!f->var.empty()) out.insert(f->var);
  collect_names(f->bound, out);
  collect_names(f->l, out);
  collect_names(f->r, out);
}

struct Namer {
  std::set<std::string> used;
  int next = 0;
  std::string fresh() { return fresh_var("r" + std::to_string(++next), used); }
};

// --------------------------------------------------------------------------
// Measures
// --------------------------------------------------------------------------

void add_occurrences(const TermPtr& t, Measure& out) {
  if (!t) return;
  out.insert(term_depth(t));
  add_occurrences(t->a, out);
  add_occurrences(t->b, out);
}

void measure_into(const FormulaPtr& f, Measure& out) {
  if (!f) return;
  for (const auto& arg : f->args) add_occurrences(arg, out);
  add_occurrences(f->bound, out);
  measure_into(f->l, out);
  measure_into(f->r, out);
}

// --------------------------------------------------------------------------
// Corrected decomposition.
//
// dec_eq(S, T) builds a relational formula equivalent (over the naturals) to
// value(S) = value(T), for a +/* term S and a simple term T.  Compound
// subterm values are named by fresh witnesses bounded by T, which is sound
// because every named value is at most value(S) = value(T):
//   * a summand is at most the sum,
//   * the argument of a successor is at most the successor's value,
//   * a factor is at most the product provided the product is nonzero,
//     which is why the product rule splits on T = 0.
// --------------------------------------------------------------------------

FormulaPtr dec_eq(const TermPtr& S, const TermPtr& T, Namer& nm);

// Continuation helper: hand `k` a simple term denoting value(child), naming
// the child with a fresh witness bounded by `bound` when it is compound.
FormulaPtr with_named(const TermPtr& child, const TermPtr& bound, Namer& nm,
                      const std::function<FormulaPtr(const TermPtr&)>& k) {
  if (!term_has_arith(child)) return k(child);
  const std::string w = nm.fresh();
  const TermPtr wv = Term::var(w);
  return Formula::bexists(w, bound, Formula::conj(dec_eq(child, wv, nm), k(wv)));
}

FormulaPtr dec_eq(const TermPtr& S, const TermPtr& T, Namer& nm) {
  if (!term_has_arith(S)) return Formula::atom_eq(S, T);
  switch (S->tag) {
    case TermTag::Succ:
      // S(P) = T  <=>  (Ex w <= T)(P = w & S(w) = T)
      return with_named(S->a, T, nm, [&](const TermPtr& c) {
        return Formula::atom_eq(Term::succ(c), T);
      });
    case TermTag::Plus:
      // P + Q = T  <=>  name compound summands below T, then A(.,.,T).
      return with_named(S->a, T, nm, [&](const TermPtr& c1) {
        return with_named(S->b, T, nm, [&](const TermPtr& c2) {
          return Formula::atom_add(c1, c2, T);
        });
      });
    case TermTag::Times: {
      if (!term_has_arith(S->a) && !term_has_arith(S->b))
        return Formula::atom_mul(S->a, S->b, T);
      // P * Q = T with a compound factor: a factor is bounded by the product
      // only when the product is nonzero, so split on T = 0.
      const TermPtr zero = Term::zero();
      FormulaPtr some_factor_zero =
          Formula::disj(dec_eq(S->a, zero, nm), dec_eq(S->b, zero, nm));
      FormulaPtr zero_case =
          Formula::conj(Formula::atom_eq(T, zero), some_factor_zero);
      FormulaPtr named = with_named(S->a, T, nm, [&](const TermPtr& c1) {
        return with_named(S->b, T, nm, [&](const TermPtr& c2) {
          return Formula::atom_mul(c1, c2, T);
        });
      });
      FormulaPtr positive_case =
          Formula::conj(Formula::neg(Formula::atom_eq(T, zero)), named);
      return Formula::disj(zero_case, positive_case);
    }
    default:
      throw std::logic_error("dec_eq: unreachable term shape");
  }
}

// Full relational decomposition of one complex classical atom.  Exactly one
// side contains + or * (both-compound atoms are refused up front).
FormulaPtr corrected_atom(const FormulaPtr& atom, Namer& nm) {
  const bool left_arith = term_has_arith(atom->args[0]);
  const bool right_arith = term_has_arith(atom->args[1]);
  if (left_arith && right_arith)
    throw std::logic_error("corrected_atom: both-compound atom slipped past validation");
  if (atom->atom == AtomTag::Eq) {
    // Orient so the compound side is decomposed against the simple side.
    return left_arith ? dec_eq(atom->args[0], atom->args[1], nm)
                      : dec_eq(atom->args[1], atom->args[0], nm);
  }
  if (atom->atom != AtomTag::Le)
    throw std::logic_error("corrected_atom: relational atom slipped past validation");
  const TermPtr& l = atom->args[0];
  const TermPtr& r = atom->args[1];
  if (left_arith) {
    // S <= T  <=>  (Ex z <= T)(S = z): the compound value fits under T.
    const std::string z = nm.fresh();
    return Formula::bexists(z, r, dec_eq(l, Term::var(z), nm));
  }
  // T <= S with S compound.
  if (r->tag == TermTag::Plus && !term_has_arith(r->a) && !term_has_arith(r->b)) {
    // T <= P + Q  <=>  (Ex u <= P)(Ex w <= Q)(u + w = T): take u = min(T, P).
    const std::string u = nm.fresh();
    const std::string w = nm.fresh();
    return Formula::bexists(
        u, r->a,
        Formula::bexists(w, r->b,
                         Formula::atom_add(Term::var(u), Term::var(w), l)));
  }
  // No witness for value(S) fits under any available simple term, so scan
  // instead:  T <= S  <=>  (All u <= T)((Ex w <= u)(S = w) -> S = u),
  // i.e. any value up to T that S fits under must equal S.  The implication
  // is spelled as a guarded disjunction.
  const std::string u = nm.fresh();
  const TermPtr uv = Term::var(u);
  const std::string w = nm.fresh();
  FormulaPtr fits_below =
      Formula::bexists(w, uv, dec_eq(r, Term::var(w), nm));
  FormulaPtr equals_here = dec_eq(r, uv, nm);
  return Formula::bforall(u, l,
                          Formula::disj(Formula::neg(fits_below), equals_here));
}

// --------------------------------------------------------------------------
// Strict-paper schemes, verbatim.
// --------------------------------------------------------------------------

bool op_topped(const TermPtr& t) {
  return t->tag == TermTag::Plus || t->tag == TermTag::Times;
}

TermPtr rebuild_op(const TermPtr& like, const TermPtr& a, const TermPtr& b) {
  return like->tag == TermTag::Plus ? Term::plus(a, b) : Term::times(a, b);
}

// Applies the first matching scheme; throws NormalFormError when none match.
FormulaPtr strict_atom(const FormulaPtr& atom, Namer& nm) {
  const TermPtr& s0 = atom->args[0];
  const TermPtr& s1 = atom->args[1];
  if (atom->atom == AtomTag::Eq && op_topped(s1)) {
    // (1)  t = t1∘t2  =>  (Ex x1 <= t)(Ex x2 <= t)(t = x1∘x2)
    const std::string x1 = nm.fresh();
    const std::string x2 = nm.fresh();
    FormulaPtr inner =
        Formula::atom_eq(s0, rebuild_op(s1, Term::var(x1), Term::var(x2)));
    return Formula::bexists(x1, s0, Formula::bexists(x2, s0, inner));
  }
  if (atom->atom == AtomTag::Le && op_topped(s0)) {
    // (2)  t1∘t2 <= t  =>  (Ex x1 <= t)(Ex x2 <= t)(x1∘x2 <= t)
    const std::string x1 = nm.fresh();
    const std::string x2 = nm.fresh();
    FormulaPtr inner =
        Formula::atom_le(rebuild_op(s0, Term::var(x1), Term::var(x2)), s1);
    return Formula::bexists(x1, s1, Formula::bexists(x2, s1, inner));
  }
  if (atom->atom == AtomTag::Le && op_topped(s1)) {
    // (3)  t <= t1∘t2  =>  (Ex x1 <= t)(Ex x2 <= t)
    //                        (x1 <= t1 & x2 <= t2 & t = x1∘x2)
    const std::string x1 = nm.fresh();
    const std::string x2 = nm.fresh();
    FormulaPtr les = Formula::conj(Formula::atom_le(Term::var(x1), s1->a),
                                   Formula::atom_le(Term::var(x2), s1->b));
    FormulaPtr eq =
        Formula::atom_eq(s0, rebuild_op(s1, Term::var(x1), Term::var(x2)));
    return Formula::bexists(x1, s0,
                            Formula::bexists(x2, s0, Formula::conj(les, eq)));
  }
  throw NormalFormError("no splitting scheme matches the atom '" +
                        to_string(atom) +
                        "': the schemes only split a + or * at the top of an "
                        "equation's right-hand side or of either side of an "
                        "inequality");
}

// --------------------------------------------------------------------------
// Traversal
// --------------------------------------------------------------------------

int count_atoms(const FormulaPtr& f) {
  if (!f) return 0;
  if (f->tag == FormulaTag::Atom) return 1;
  return count_atoms(f->l) + count_atoms(f->r);
}

void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (!f) return;
  if (f->tag == FormulaTag::Atom) {
    out.push_back(f);
    return;
  }
  collect_atoms(f->l, out);
  collect_atoms(f->r, out);
}

struct StepResult {
  FormulaPtr out;          // whole formula after the step
  FormulaPtr target;       // the atom that was rewritten
  FormulaPtr replacement;  // what it became
};

// Rebuilds f with the leftmost atom satisfying `pick` replaced by
// `make(atom)`.  Reports the target/replacement pair through `hit`.
FormulaPtr replace_leftmost(const FormulaPtr& f,
                            const std::function<bool(const FormulaPtr&)>& pick,
                            const std::function<FormulaPtr(const FormulaPtr&)>& make,
                            StepResult& hit) {
  if (!f || hit.target) return f;
  if (f->tag == FormulaTag::Atom) {
    if (!pick(f)) return f;
    hit.target = f;
    hit.replacement = make(f);
    return hit.replacement;
  }
  FormulaPtr l = replace_leftmost(f->l, pick, make, hit);
  FormulaPtr r = replace_leftmost(f->r, pick, make, hit);
  if (l == f->l && r == f->r) return f;
  switch (f->tag) {
    case FormulaTag::And: return Formula::conj(l, r);
    case FormulaTag::Or: return Formula::disj(l, r);
    case FormulaTag::Imp: return Formula::imp(l, r);
    case FormulaTag::Forall: return Formula::forall(f->var, l);
    case FormulaTag::Exists: return Formula::exists(f->var, l);
    case FormulaTag::BForall: return Formula::bforall(f->var, f->bound, l);
    case FormulaTag::BExists: return Formula::bexists(f->var, f->bound, l);
    default: throw std::logic_error("replace_leftmost: unreachable");
  }
}

// Canonical shape signature of an atom: variable names replaced by v1, v2,
// ... in order of first occurrence, then printed.  Two atoms with the same
// signature differ only in variable names.
TermPtr canon_term(const TermPtr& t, std::map<std::string, std::string>& ren) {
  if (!t) return t;
  switch (t->tag) {
    case TermTag::Var: {
      auto it = ren.find(t->name);
      if (it == ren.end())
        it = ren.emplace(t->name, "v" + std::to_string(ren.size() + 1)).first;
      return Term::var(it->second);
    }
    case TermTag::Zero: return t;
    case TermTag::Succ: return Term::succ(canon_term(t->a, ren));
    case TermTag::Plus:
      return Term::plus(canon_term(t->a, ren), canon_term(t->b, ren));
    case TermTag::Times:
      return Term::times(canon_term(t->a, ren), canon_term(t->b, ren));
  }
  throw std::logic_error("canon_term: unreachable");
}

std::string atom_signature(const FormulaPtr& atom) {
  std::map<std::string, std::string> ren;
  std::vector<TermPtr> args;
  for (const auto& arg : atom->args) args.push_back(canon_term(arg, ren));
  FormulaPtr renamed;
  switch (atom->atom) {
    case AtomTag::Eq: renamed = Formula::atom_eq(args[0], args[1]); break;
    case AtomTag::Le: renamed = Formula::atom_le(args[0], args[1]); break;
    case AtomTag::A: renamed = Formula::atom_add(args[0], args[1], args[2]); break;
    case AtomTag::M: renamed = Formula::atom_mul(args[0], args[1], args[2]); break;
  }
  return to_string(renamed);
}

// --------------------------------------------------------------------------
// Validation
// --------------------------------------------------------------------------

void check_bounds(const FormulaPtr& f) {
  if (!f) return;
  if (f->bound && term_has_arith(f->bound))
    refuse("unsupported-bound", "the quantifier bound '" + to_string(f->bound) +
                                    "' contains + or *");
  check_bounds(f->l);
  check_bounds(f->r);
}

void validate_input(const FormulaPtr& f, RewriteMode mode) {
  if (!f) refuse("missing-formula", "");
  if (classify(f) != FormulaClass::Delta0)
    refuse("not-delta0",
           "rewriting handles bounded formulas only; '" + to_string(f) +
               "' has an unbounded quantifier");
  check_bounds(f);
  std::vector<FormulaPtr> atoms;
  collect_atoms(f, atoms);
  for (const auto& atom : atoms) {
    const bool relational_atom =
        atom->atom == AtomTag::A || atom->atom == AtomTag::M;
    if (relational_atom) {
      if (mode == RewriteMode::StrictPaper)
        refuse("not-classical", "the splitting schemes take classical input; '" +
                                    to_string(atom) + "' is a relational atom");
      for (const auto& arg : atom->args)
        if (term_has_arith(arg))
          refuse("unsupported-atom", "the relational atom '" + to_string(atom) +
                                         "' has + or * inside an argument");
      continue;
    }
    if (mode == RewriteMode::Corrected && term_has_arith(atom->args[0]) &&
        term_has_arith(atom->args[1]))
      refuse("unsupported-atom",
             "both sides of '" + to_string(atom) +
                 "' contain + or *, so neither side can bound a witness for "
                 "the other's value");
  }
}

std::optional<StepResult> step_once(const FormulaPtr& f, RewriteMode mode) {
  Namer nm;
  collect_names(f, nm.used);
  StepResult hit;
  auto pick = [](const FormulaPtr& atom) {
    return atom_shape(atom) == AtomShape::Complex;
  };
  auto make = [&](const FormulaPtr& atom) {
    return mode == RewriteMode::Corrected ? corrected_atom(atom, nm)
                                          : strict_atom(atom, nm);
  };
  FormulaPtr out = replace_leftmost(f, pick, make, hit);
  if (!hit.target) return std::nullopt;
  hit.out = out;
  return hit;
}

std::optional<StepResult> finalize_once(const FormulaPtr& f) {
  StepResult hit;
  auto pick = [](const FormulaPtr& atom) {
    return atom_shape(atom) == AtomShape::AlmostSimple;
  };
  auto make = [](const FormulaPtr& atom) {
    const TermPtr& x = atom->args[0];
    const TermPtr& rhs = atom->args[1];
    return rhs->tag == TermTag::Plus ? Formula::atom_add(rhs->a, rhs->b, x)
                                     : Formula::atom_mul(rhs->a, rhs->b, x);
  };
  FormulaPtr out = replace_leftmost(f, pick, make, hit);
  if (!hit.target) return std::nullopt;
  hit.out = out;
  return hit;
}

}  // namespace

// --------------------------------------------------------------------------
// Public surface
// --------------------------------------------------------------------------

AtomShape atom_shape(const FormulaPtr& f) {
  if (!f || f->tag != FormulaTag::Atom)
    throw std::logic_error("atom_shape: not an atom");
  bool any_arith = false;
  for (const auto& arg : f->args) any_arith = any_arith || term_has_arith(arg);
  if (!any_arith) return AtomShape::Simple;
  if (f->atom == AtomTag::Eq && f->args[0]->tag == TermTag::Var &&
      op_topped(f->args[1]) && !term_has_arith(f->args[1]->a) &&
      !term_has_arith(f->args[1]->b))
    return AtomShape::AlmostSimple;
  return AtomShape::Complex;
}

Measure measure(const FormulaPtr& f) {
  Measure out;
  measure_into(f, out);
  return out;
}

bool dm_leq(const Measure& a, const Measure& b) {
  std::map<int, long> diff;  // count in a minus count in b
  for (int x : a) ++diff[x];
  for (int x : b) --diff[x];
  bool surplus_in_b_above = false;  // seen y (> current key) with more in b
  for (auto it = diff.rbegin(); it != diff.rend(); ++it) {
    if (it->second > 0 && !surplus_in_b_above) return false;
    if (it->second < 0) surplus_in_b_above = true;
  }
  return true;
}

bool dm_less(const Measure& a, const Measure& b) {
  return a != b && dm_leq(a, b);
}

std::optional<FormulaPtr> rewrite_step(const FormulaPtr& f, RewriteMode mode) {
  validate_input(f, mode);
  auto step = step_once(f, mode);
  if (!step) return std::nullopt;
  return step->out;
}

FormulaPtr eliminate_functions(const FormulaPtr& f, RewriteMode mode,
                               std::vector<RewriteTraceEntry>* trace) {
  validate_input(f, mode);
  if (trace) trace->clear();
  FormulaPtr cur = f;
  Measure prev = measure(cur);
  const int budget = 64 + 4 * count_atoms(f);
  int steps = 0;

  auto record = [&](const FormulaPtr& next) {
    Measure after = measure(next);
    if (trace) trace->push_back({next, after, dm_less(after, prev)});
    prev = std::move(after);
    cur = next;
  };

  while (auto step = step_once(cur, mode)) {
    if (mode == RewriteMode::StrictPaper) {
      // A scheme that recreates the very atom shape it split can never make
      // progress; diagnose instead of looping.
      const std::string sig = atom_signature(step->target);
      std::vector<FormulaPtr> created;
      collect_atoms(step->replacement, created);
      for (const auto& atom : created) {
        if (atom_shape(atom) == AtomShape::Complex &&
            atom_signature(atom) == sig)
          throw NormalFormError(
              "splitting '" + to_string(step->target) +
              "' reproduced an atom of the same shape ('" + to_string(atom) +
              "'); the schemes cannot bring this formula to normal form");
      }
    }
    record(step->out);
    if (++steps > budget) {
      if (mode == RewriteMode::StrictPaper)
        throw NormalFormError("the step budget ran out before '" +
                              to_string(f) + "' reached normal form");
      throw std::logic_error("eliminate_functions: corrected mode exceeded its step bound");
    }
  }
  while (auto fin = finalize_once(cur)) record(fin->out);

  if (!is_relational(cur) || classify(cur) != FormulaClass::Delta0) {
    if (mode == RewriteMode::StrictPaper)
      throw NormalFormError(
          "the schemes copied + or * into quantifier bounds; '" +
          to_string(cur) + "' is not relational");
    throw std::logic_error("eliminate_functions: corrected output is not relational Delta0");
  }
  return cur;
}

std::vector<EquivalenceVerdict> equivalence_verdicts(RewriteMode mode,
                                                     std::uint64_t bound) {
  const TermPtr s = Term::var("s");
  const TermPtr p = Term::var("p");
  const TermPtr q = Term::var("q");
  const TermPtr o = Term::var("o");

  struct Item {
    std::string name;
    FormulaPtr lhs;
  };
  std::vector<Item> items;
  if (mode == RewriteMode::StrictPaper) {
    items = {
        {"result-split-plus", Formula::atom_eq(s, Term::plus(p, q))},
        {"result-split-times", Formula::atom_eq(s, Term::times(p, q))},
        {"lower-split-plus", Formula::atom_le(Term::plus(p, q), s)},
        {"lower-split-times", Formula::atom_le(Term::times(p, q), s)},
        {"upper-split-plus", Formula::atom_le(s, Term::plus(p, q))},
        {"upper-split-times", Formula::atom_le(s, Term::times(p, q))},
    };
  } else {
    items = {
        {"direct-atom-plus", Formula::atom_eq(Term::plus(p, q), s)},
        {"direct-atom-times", Formula::atom_eq(Term::times(p, q), s)},
        {"lower-naming-plus", Formula::atom_le(Term::plus(p, q), s)},
        {"lower-naming-times", Formula::atom_le(Term::times(p, q), s)},
        {"upper-split-plus", Formula::atom_le(s, Term::plus(p, q))},
        {"upper-scan-times", Formula::atom_le(s, Term::times(p, q))},
        {"succ-naming-times", Formula::atom_eq(Term::succ(Term::times(p, q)), s)},
        {"nested-naming-plus",
         Formula::atom_eq(Term::plus(Term::times(p, q), o), s)},
        {"nested-zero-split-times",
         Formula::atom_eq(Term::times(Term::plus(p, q), o), s)},
        {"upper-scan-plus-deep",
         Formula::atom_le(s, Term::plus(Term::times(p, q), o))},
    };
  }

  std::vector<EquivalenceVerdict> verdicts;
  for (const auto& item : items) {
    Namer nm;
    collect_names(item.lhs, nm.used);
    FormulaPtr rhs = mode == RewriteMode::Corrected
                         ? corrected_atom(item.lhs, nm)
                         : strict_atom(item.lhs, nm);
    EquivalenceVerdict v{item.name, to_string(item.lhs), to_string(rhs), true, ""};
    // Sweep every assignment of the scheme's variables up to the bound; the
    // schemes' truth depends only on the values of their argument terms, so
    // variable instances decide them.
    FormulaPtr both = Formula::conj(item.lhs, rhs);
    for_each_assignment(both, bound, [&](const Assignment& env) {
      if (eval_delta0(item.lhs, env) != eval_delta0(rhs, env)) {
        v.holds = false;
        std::ostringstream os;
        bool first = true;
        for (const auto& [name, value] : env) {
          os << (first ? "" : ", ") << name << " = " << value;
          first = false;
        }
        v.counterexample = os.str();
        return false;
      }
      return true;
    });
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

}  // namespace relic
