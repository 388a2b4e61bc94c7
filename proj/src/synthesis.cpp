#include "relic/synthesis.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relic/builder.hpp"
#include "relic/semantics.hpp"
#include "relic/theories.hpp"

namespace relic {

namespace {

// Scale gate: proofs of facts about a numeral of value n take O(n) axiom
// instances, so synthesis caps the values it will unfold.  Well under the
// theory's own parameter cap, which leaves headroom for the sums and
// products of gated values that derivations mention.
constexpr std::uint64_t kNumeralCap = 10000;

[[noreturn]] void refuse(const std::string& reason, const std::string& detail) {
  throw RefuseError(reason, detail);
}

std::uint64_t closed_value(const TermPtr& t) {
  auto v = numeral_value(t);
  if (!v) throw std::logic_error("synthesis: open term in a closed position");
  return *v;
}

std::uint64_t max_chain_value(const TermPtr& t) {
  if (auto v = numeral_value(t)) return *v;
  std::uint64_t best = 0;
  if (t->a) best = std::max(best, max_chain_value(t->a));
  if (t->b) best = std::max(best, max_chain_value(t->b));
  return best;
}

std::uint64_t max_chain_value(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Atom: {
      std::uint64_t best = 0;
      for (const auto& a : f->args) best = std::max(best, max_chain_value(a));
      return best;
    }
    case FormulaTag::Bot: return 0;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp:
      return std::max(max_chain_value(f->l), max_chain_value(f->r));
    case FormulaTag::Forall:
    case FormulaTag::Exists: return max_chain_value(f->l);
    case FormulaTag::BForall:
    case FormulaTag::BExists:
      return std::max(max_chain_value(f->bound), max_chain_value(f->l));
  }
  return 0;
}

void gate_scale(const FormulaPtr& f) {
  std::uint64_t big = max_chain_value(f);
  if (big > kNumeralCap)
    refuse("numeral-too-large", "a numeral of value " + std::to_string(big) +
                                    " exceeds the synthesis scale cap " +
                                    std::to_string(kNumeralCap));
}

// Every variable name occurring anywhere: free, as a binder, or in a bound.
void collect_all_names(const TermPtr& t, std::set<std::string>& out) {
  collect_term_vars(t, out);
}
void collect_all_names(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->tag) {
    case FormulaTag::Atom:
      for (const auto& a : f->args) collect_all_names(a, out);
      return;
    case FormulaTag::Bot: return;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp:
      collect_all_names(f->l, out);
      collect_all_names(f->r, out);
      return;
    case FormulaTag::BForall:
    case FormulaTag::BExists:
      collect_all_names(f->bound, out);
      [[fallthrough]];
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      out.insert(f->var);
      collect_all_names(f->l, out);
      return;
  }
}

// ---------------------------------------------------------------------------
// The bounded-sentence prover.
//
// pos(f) emits steps concluding f; neg(f) emits steps concluding f -> bot.
// Both require a closed bounded formula, consult the evaluator at every node
// to pick branches and witnesses, and maintain the invariant that the stated
// conclusion is kernel-equal to the target.
// ---------------------------------------------------------------------------

struct BoundedProver {
  ScriptBuilder& b;

  // One direction of a biconditional theory axiom, as its own step.
  std::size_t iff_half(const std::string& name, std::vector<std::uint64_t> params,
                       bool forward) {
    std::size_t th = b.theory_step(name, std::move(params));
    FormulaPtr both = b.conc(th);
    Bindings bind;
    bind["phi"] = Binding::of_formula(both->l);
    bind["psi"] = Binding::of_formula(both->r);
    std::size_t elim = b.axiom(forward ? "and-elim-l" : "and-elim-r", bind);
    return b.mp(th, elim);
  }

  // |- m <= n, for m <= n: pick the m-th disjunct of the <=-enumeration.
  std::size_t le_fact(std::uint64_t m, std::uint64_t n) {
    std::size_t rtl =
        b.instantiate(iff_half("R~4", {n}, false), {{"x", Term::numeral(m)}});
    FormulaPtr cases = b.conc(rtl)->l;  // m=0 | ... | m=n
    std::size_t e = b.axiom("eq-id", {{"t", Binding::of_term(Term::numeral(m))}});
    std::size_t pick = b.imp_into_disjunction(
        cases, Formula::atom_eq(Term::numeral(m), Term::numeral(m)));
    return b.mp(b.mp(e, pick), rtl);
  }

  std::size_t pos(const FormulaPtr& f) {
    if (!eval_delta0(f, {}))
      throw std::logic_error("synthesis: pos called on a false node");
    switch (f->tag) {
      case FormulaTag::Atom: return pos_atom(f);
      case FormulaTag::And: return b.adjoin(pos(f->l), pos(f->r));
      case FormulaTag::Or: {
        bool left = eval_delta0(f->l, {});
        std::size_t p = pos(left ? f->l : f->r);
        Bindings ob;
        ob["phi"] = Binding::of_formula(f->l);
        ob["psi"] = Binding::of_formula(f->r);
        return b.mp(p, b.axiom(left ? "or-intro-l" : "or-intro-r", ob));
      }
      case FormulaTag::Imp:
        if (f->r->tag == FormulaTag::Bot) return neg(f->l);
        refuse("unsupported-connective",
               "implication with a non-absurd consequent in positive position: " +
                   to_string(f));
      case FormulaTag::BExists: return pos_bexists(f);
      case FormulaTag::BForall: return pos_bforall(f);
      default:
        throw std::logic_error("synthesis: pos on an unbounded quantifier");
    }
  }

  std::size_t neg(const FormulaPtr& f) {
    if (f->tag != FormulaTag::Bot && eval_delta0(f, {}))
      throw std::logic_error("synthesis: neg called on a true node");
    switch (f->tag) {
      case FormulaTag::Bot: return b.identity(Formula::bot());
      case FormulaTag::Atom: return neg_atom(f);
      case FormulaTag::And: {
        bool left_false = !eval_delta0(f->l, {});
        FormulaPtr side = left_false ? f->l : f->r;
        Bindings eb;
        eb["phi"] = Binding::of_formula(f->l);
        eb["psi"] = Binding::of_formula(f->r);
        std::size_t elim = b.axiom(left_false ? "and-elim-l" : "and-elim-r", eb);
        return b.trans(elim, neg(side));
      }
      case FormulaTag::Or: return b.or_elim(neg(f->l), neg(f->r));
      case FormulaTag::Imp:
        if (f->r->tag == FormulaTag::Bot) return b.dni(pos(f->l));
        refuse("unsupported-connective",
               "implication with a non-absurd consequent under negation: " +
                   to_string(f));
      case FormulaTag::BExists: return neg_bexists(f);
      case FormulaTag::BForall: return neg_bforall(f);
      default:
        throw std::logic_error("synthesis: neg on an unbounded quantifier");
    }
  }

 private:
  std::size_t pos_atom(const FormulaPtr& f) {
    switch (f->atom) {
      case AtomTag::Eq:
        // Both sides are the same closed chain.
        return b.axiom("eq-id", {{"t", Binding::of_term(f->args[0])}});
      case AtomTag::A:
      case AtomTag::M: {
        std::uint64_t m = closed_value(f->args[0]);
        std::uint64_t n = closed_value(f->args[1]);
        std::uint64_t k = closed_value(f->args[2]);
        const char* name = f->atom == AtomTag::A ? "R~1" : "R~2";
        std::size_t h = b.instantiate(iff_half(name, {m, n}, false),
                                      {{"x", Term::numeral(k)}});
        std::size_t e =
            b.axiom("eq-id", {{"t", Binding::of_term(Term::numeral(k))}});
        return b.mp(e, h);
      }
      case AtomTag::Le:
        return le_fact(closed_value(f->args[0]), closed_value(f->args[1]));
    }
    throw std::logic_error("synthesis: unknown atom");
  }

  std::size_t neg_atom(const FormulaPtr& f) {
    switch (f->atom) {
      case AtomTag::Eq:
        return b.theory_step(
            "R~3", {closed_value(f->args[0]), closed_value(f->args[1])});
      case AtomTag::A:
      case AtomTag::M: {
        std::uint64_t m = closed_value(f->args[0]);
        std::uint64_t n = closed_value(f->args[1]);
        std::uint64_t k = closed_value(f->args[2]);
        bool add = f->atom == AtomTag::A;
        std::uint64_t result = add ? m + n : m * n;
        if (result > kTheoryParamCap)
          refuse("numeral-too-large",
                 "refuting the atom needs an axiom instance at " +
                     std::to_string(result) + ", beyond the theory cap");
        std::size_t h = b.instantiate(iff_half(add ? "R~1" : "R~2", {m, n}, true),
                                      {{"x", Term::numeral(k)}});
        return b.trans(h, b.theory_step("R~3", {result, k}));
      }
      case AtomTag::Le: {
        std::uint64_t m = closed_value(f->args[0]);
        std::uint64_t n = closed_value(f->args[1]);  // m > n
        std::size_t ltr =
            b.instantiate(iff_half("R~4", {n}, true), {{"x", Term::numeral(m)}});
        std::vector<std::size_t> cases;
        for (std::uint64_t k = 0; k <= n; ++k)
          cases.push_back(b.theory_step("R~3", {m, k}));
        return b.trans(ltr, b.fold_or_elim(cases));
      }
    }
    throw std::logic_error("synthesis: unknown atom");
  }

  // Case-fold a per-numeral family g(0),...,g(k) into (y=0 | ... | y=k) -> g(y)
  // and then through the <=-enumeration into y <= k -> g(y).
  std::size_t bounded_cases(const std::string& y, std::uint64_t k, FormulaPtr g,
                            const std::vector<std::size_t>& per_numeral) {
    std::vector<std::size_t> cases;
    cases.reserve(per_numeral.size());
    for (std::uint64_t m = 0; m <= k; ++m)
      cases.push_back(b.aux_imp(per_numeral[m], y, g, Term::numeral(m)));
    std::size_t fold = b.fold_or_elim(cases);
    std::size_t ltr =
        b.instantiate(iff_half("R~4", {k}, true), {{"x", Term::var(y)}});
    return b.trans(ltr, fold);
  }

  // y <= k -> g  |-  !(y <= k) | g, via the crispness axiom for <=.
  std::size_t guard_disjunction(const std::string& y, std::uint64_t k,
                                const FormulaPtr& g, std::size_t from_le) {
    FormulaPtr le = Formula::atom_le(Term::var(y), Term::numeral(k));
    Bindings ob;
    ob["phi"] = Binding::of_formula(Formula::neg(le));
    ob["psi"] = Binding::of_formula(g);
    std::size_t high = b.trans(from_le, b.axiom("or-intro-r", ob));
    std::size_t low = b.axiom("or-intro-l", ob);
    std::size_t oe = b.or_elim(high, low);
    std::size_t crisp =
        b.instantiate(b.theory_step("R~6", {k}), {{"x", Term::var(y)}});
    return b.mp(crisp, oe);
  }

  std::size_t pos_bforall(const FormulaPtr& f) {
    std::uint64_t k = closed_value(f->bound);
    const std::string& y = f->var;
    std::vector<std::size_t> per;
    for (std::uint64_t m = 0; m <= k; ++m)
      per.push_back(pos(substitute(f->l, y, Term::numeral(m))));
    std::size_t from_le = bounded_cases(y, k, f->l, per);
    return b.gen(guard_disjunction(y, k, f->l, from_le), y);
  }

  std::size_t pos_bexists(const FormulaPtr& f) {
    std::uint64_t k = closed_value(f->bound);
    const std::string& y = f->var;
    for (std::uint64_t m = 0; m <= k; ++m) {
      FormulaPtr inst = substitute(f->l, y, Term::numeral(m));
      if (!eval_delta0(inst, {})) continue;
      std::size_t both = b.adjoin(le_fact(m, k), pos(inst));
      FormulaPtr phi =
          Formula::conj(Formula::atom_le(Term::var(y), f->bound), f->l);
      return b.ex_intro(both, y, phi, Term::numeral(m));
    }
    throw std::logic_error("synthesis: true bounded existential without witness");
  }

  std::size_t neg_bexists(const FormulaPtr& f) {
    std::uint64_t k = closed_value(f->bound);
    const std::string& y = f->var;
    FormulaPtr nbody = Formula::neg(f->l);
    std::vector<std::size_t> per;
    for (std::uint64_t m = 0; m <= k; ++m)
      per.push_back(neg(substitute(f->l, y, Term::numeral(m))));
    std::size_t from_le = bounded_cases(y, k, nbody, per);
    std::size_t guarded = guard_disjunction(y, k, nbody, from_le);
    return b.ex_elim(b.morg(guarded), y);
  }

  std::size_t neg_bforall(const FormulaPtr& f) {
    std::uint64_t k = closed_value(f->bound);
    const std::string& y = f->var;
    for (std::uint64_t m = 0; m <= k; ++m) {
      FormulaPtr inst = substitute(f->l, y, Term::numeral(m));
      if (eval_delta0(inst, {})) continue;
      std::size_t doubled = b.dni(le_fact(m, k));  // !(m<=k) -> bot
      std::size_t oe = b.or_elim(doubled, neg(inst));
      FormulaPtr le = Formula::atom_le(Term::var(y), f->bound);
      Bindings fb;
      fb["x"] = Binding::of_var(y);
      fb["phi"] = Binding::of_formula(Formula::disj(Formula::neg(le), f->l));
      fb["t"] = Binding::of_term(Term::numeral(m));
      return b.trans(b.axiom("forall-inst", fb), oe);
    }
    throw std::logic_error(
        "synthesis: false bounded universal without counterexample");
  }
};

void gate_bounded_sentence(const FormulaPtr& f) {
  if (!f) refuse("missing-formula", "null sentence");
  if (!is_relational(f))
    refuse("not-relational", "the sentence uses classical vocabulary");
  if (!is_sentence(f)) {
    std::string names;
    for (const auto& v : free_vars(f)) names += (names.empty() ? "" : ", ") + v;
    refuse("not-a-sentence", "free variables: " + names);
  }
  gate_scale(f);
}

}  // namespace

ProofScript prove_true_delta0(const FormulaPtr& sentence) {
  gate_bounded_sentence(sentence);
  if (classify(sentence) != FormulaClass::Delta0)
    refuse("not-delta0", to_string(sentence));
  if (!eval_delta0(sentence, {})) refuse("evaluates-false", to_string(sentence));
  ScriptBuilder b(Profile::QL0, TheoryKind::R);
  BoundedProver prover{b};
  std::size_t root = prover.pos(sentence);
  if (!kernel_equal(b.conc(root), sentence))
    throw std::logic_error("synthesis: produced the wrong theorem");
  return b.take();
}

ProofScript prove_false_delta0(const FormulaPtr& sentence) {
  gate_bounded_sentence(sentence);
  if (classify(sentence) != FormulaClass::Delta0)
    refuse("not-delta0", to_string(sentence));
  if (eval_delta0(sentence, {})) refuse("evaluates-true", to_string(sentence));
  ScriptBuilder b(Profile::QL0, TheoryKind::R);
  BoundedProver prover{b};
  std::size_t root = prover.neg(sentence);
  if (!kernel_equal(b.conc(root), Formula::imp(sentence, Formula::bot())))
    throw std::logic_error("synthesis: produced the wrong theorem");
  return b.take();
}

ProofScript prove_sigma1(const FormulaPtr& sentence, std::uint64_t witness_cap) {
  gate_bounded_sentence(sentence);
  if (classify(sentence) != FormulaClass::Sigma1)
    refuse("not-sigma1", to_string(sentence));
  for (std::uint64_t m = 0; m <= witness_cap; ++m) {
    FormulaPtr inst = substitute(sentence->l, sentence->var, Term::numeral(m));
    if (!eval_delta0(inst, {})) continue;
    ScriptBuilder b(Profile::QL0, TheoryKind::R);
    BoundedProver prover{b};
    std::size_t body = prover.pos(inst);
    std::size_t root =
        b.ex_intro(body, sentence->var, sentence->l, Term::numeral(m));
    if (!kernel_equal(b.conc(root), sentence))
      throw std::logic_error("synthesis: produced the wrong theorem");
    return b.take();
  }
  refuse("witness-exhausted",
         "no witness <= " + std::to_string(witness_cap) +
             " makes the body true; a refusal, not a falsity claim");
}

SeparatorFormula build_separator(const SeparatorSpec& spec) {
  auto gate = [](const FormulaPtr& f, const char* which) {
    if (!f) refuse("missing-formula", which);
    if (!is_relational(f))
      refuse("not-relational", std::string(which) + ": " + to_string(f));
    if (classify(f) != FormulaClass::Delta0)
      refuse("not-delta0", std::string(which) + ": " + to_string(f));
    for (const auto& v : free_vars(f))
      if (v != "x" && v != "v")
        refuse("bad-free-variables",
               std::string(which) + " mentions \"" + v +
                   "\"; only x (the member) and v (the witness) are allowed");
  };
  gate(spec.alpha, "alpha");
  gate(spec.beta, "beta");

  std::set<std::string> used{"x", "v"};
  collect_all_names(spec.alpha, used);
  collect_all_names(spec.beta, used);
  std::string u = fresh_var("u", used);

  FormulaPtr beta_u = substitute(spec.beta, "v", Term::var(u));
  FormulaPtr ex_beta = Formula::bexists(u, Term::var("v"), beta_u);
  FormulaPtr psi =
      Formula::neg(Formula::disj(Formula::neg(spec.alpha), ex_beta));
  FormulaPtr phi = Formula::exists("v", psi);
  if (classify(phi) != FormulaClass::Sigma1)
    throw std::logic_error("synthesis: separator formula is not existential");
  return {psi, phi};
}

ProofScript prove_separator(const SeparatorSpec& spec, std::uint64_t n,
                            SeparatorSide side, std::uint64_t cap) {
  SeparatorFormula sf = build_separator(spec);

  auto witness = [&](const FormulaPtr& g,
                     std::uint64_t k) -> std::optional<std::uint64_t> {
    for (std::uint64_t w = 0; w <= cap; ++w) {
      if (eval_delta0(g, Assignment{{"x", k}, {"v", w}})) return w;
    }
    return std::nullopt;
  };

  // The sets must be disjoint over the whole tested range; a violation is a
  // spec bug and aborts the call regardless of the requested side.
  for (std::uint64_t k = 0; k <= std::max(cap, n); ++k) {
    if (k > cap && k != n) continue;
    if (witness(spec.alpha, k) && witness(spec.beta, k))
      refuse("separator-sets-intersect",
             "both sets contain " + std::to_string(k) +
                 " (witnesses <= " + std::to_string(cap) + ")");
  }

  if (side == SeparatorSide::Pos) {
    if (!witness(spec.alpha, n))
      refuse("not-in-set", std::to_string(n) +
                               " has no alpha witness <= " + std::to_string(cap));
    return prove_sigma1(substitute(sf.phi, "x", Term::numeral(n)), cap);
  }

  auto bw = witness(spec.beta, n);
  if (!bw)
    refuse("not-in-set",
           std::to_string(n) + " has no beta witness <= " + std::to_string(cap));
  std::uint64_t m = *bw;

  FormulaPtr alpha_n = substitute(spec.alpha, "x", Term::numeral(n));
  FormulaPtr beta_n = substitute(spec.beta, "x", Term::numeral(n));
  FormulaPtr psi_n = substitute(sf.psi, "x", Term::numeral(n));
  gate_scale(psi_n);

  // psi_n = !(!alpha_n | Ex u <= v . beta_n(u)); peel the pieces apart so the
  // assembled steps state exactly the separator's own subformulas.
  FormulaPtr split = psi_n->l;        // !alpha_n | Ex u <= v . beta_n(u)
  FormulaPtr neg_alpha_n = split->l;
  FormulaPtr ex_beta_n = split->r;    // bounded existential over u
  const std::string u = ex_beta_n->var;

  ScriptBuilder b(Profile::QL0, TheoryKind::R);
  BoundedProver prover{b};

  // Low side: v <= m -> !alpha_n, from the pointwise refutations of alpha.
  std::vector<std::size_t> per;
  for (std::uint64_t k = 0; k <= m; ++k)
    per.push_back(prover.neg(substitute(alpha_n, "v", Term::numeral(k))));
  std::vector<std::size_t> cases;
  for (std::uint64_t k = 0; k <= m; ++k)
    cases.push_back(b.aux_imp(per[k], "v", neg_alpha_n, Term::numeral(k)));
  std::size_t fold = b.fold_or_elim(cases);
  std::size_t ltr =
      b.instantiate(prover.iff_half("R~4", {m}, true), {{"x", Term::var("v")}});
  std::size_t low = b.trans(ltr, fold);  // v <= m -> !alpha_n

  // High side: m <= v -> Ex u . (u <= v & beta_n(u)), via the beta witness.
  std::size_t pb = prover.pos(substitute(beta_n, "v", Term::numeral(m)));
  FormulaPtr lev = Formula::atom_le(Term::numeral(m), Term::var("v"));
  std::size_t ai = b.and_intro(b.identity(lev), b.weaken(pb, lev));
  FormulaPtr matrix = Formula::conj(
      Formula::atom_le(Term::var(u), Term::var("v")), ex_beta_n->l);
  Bindings eb;
  eb["x"] = Binding::of_var(u);
  eb["phi"] = Binding::of_formula(matrix);
  eb["t"] = Binding::of_term(Term::numeral(m));
  std::size_t high = b.trans(ai, b.axiom("exists-intro", eb));

  // Both sides land in !alpha_n | Ex u <= v . beta_n(u); the order axiom
  // v <= m | m <= v discharges the case split, and double negation plus
  // existential elimination close the refutation of phi(n).
  Bindings ob;
  ob["phi"] = Binding::of_formula(neg_alpha_n);
  ob["psi"] = Binding::of_formula(ex_beta_n);
  std::size_t t1 = b.trans(low, b.axiom("or-intro-l", ob));
  std::size_t t2 = b.trans(high, b.axiom("or-intro-r", ob));
  std::size_t oe = b.or_elim(t1, t2);
  std::size_t order =
      b.instantiate(b.theory_step("R~5", {m}), {{"x", Term::var("v")}});
  std::size_t both = b.mp(order, oe);     // !alpha_n | Ex u <= v . beta_n(u)
  std::size_t doubled = b.dni(both);      // psi_n -> bot
  std::size_t root = b.ex_elim(doubled, "v");
  FormulaPtr phi_n = substitute(sf.phi, "x", Term::numeral(n));
  if (!kernel_equal(b.conc(root), Formula::imp(phi_n, Formula::bot())))
    throw std::logic_error("synthesis: produced the wrong theorem");
  return b.take();
}

}  // namespace relic
