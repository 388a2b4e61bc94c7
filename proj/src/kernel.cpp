#include "relic/kernel.hpp"

#include <functional>

#include "relic/theories.hpp"

namespace relic {

std::string to_string(Profile p) { return p == Profile::QL0 ? "QL0" : "QSLw"; }

std::string to_string(TheoryKind t) {
  switch (t) {
    case TheoryKind::None: return "none";
    case TheoryKind::R: return "R~";
    case TheoryKind::Q: return "Q~";
  }
  return "none";
}

Binding Binding::of_term(TermPtr t) {
  Binding b;
  b.kind = BindKind::TermB;
  b.term = std::move(t);
  return b;
}

Binding Binding::of_formula(FormulaPtr f) {
  Binding b;
  b.kind = BindKind::FormulaB;
  b.formula = std::move(f);
  return b;
}

Binding Binding::of_var(std::string v) {
  Binding b;
  b.kind = BindKind::VarB;
  b.var = std::move(v);
  return b;
}

// ---------------------------------------------------------------------------
// Binding access helpers
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& msg) { throw CheckError(msg); }

const Binding& get_bind(const Bindings& b, const std::string& name, BindKind kind,
                        const std::string& id) {
  auto it = b.find(name);
  if (it == b.end()) fail("missing binding '" + name + "' for '" + id + "'");
  if (it->second.kind != kind) fail("binding '" + name + "' for '" + id + "' has the wrong sort");
  return it->second;
}

FormulaPtr getf(const Bindings& b, const std::string& name, const std::string& id) {
  FormulaPtr f = get_bind(b, name, BindKind::FormulaB, id).formula;
  if (!f) fail("binding '" + name + "' for '" + id + "' is empty");
  return f;
}

TermPtr gett(const Bindings& b, const std::string& name, const std::string& id) {
  TermPtr t = get_bind(b, name, BindKind::TermB, id).term;
  if (!t) fail("binding '" + name + "' for '" + id + "' is empty");
  return t;
}

std::string getv(const Bindings& b, const std::string& name, const std::string& id) {
  return get_bind(b, name, BindKind::VarB, id).var;
}

void check_no_extra(const Bindings& b, const SchemaInfo& info, const std::string& id) {
  for (const auto& [k, v] : b) {
    bool known = false;
    for (const auto& [name, kind] : info.binds)
      if (name == k) known = true;
    if (!known) fail("unknown binding '" + k + "' for '" + id + "'");
  }
}

FormulaPtr subst_checked(const FormulaPtr& f, const std::string& x, const TermPtr& t,
                         const std::string& id) {
  try {
    return substitute(f, x, t);
  } catch (const FormError& e) {
    fail(std::string("in '") + id + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Axiom schemas
// ---------------------------------------------------------------------------

using AxiomFn = std::function<FormulaPtr(const Bindings&)>;

struct AxiomDef {
  bool ql0 = false, qslw = false;
  SchemaInfo info;
  AxiomFn make;
};

const std::pair<std::string, BindKind> kPhi{"phi", BindKind::FormulaB};
const std::pair<std::string, BindKind> kPsi{"psi", BindKind::FormulaB};
const std::pair<std::string, BindKind> kChi{"chi", BindKind::FormulaB};
const std::pair<std::string, BindKind> kX{"x", BindKind::VarB};
const std::pair<std::string, BindKind> kS{"s", BindKind::TermB};
const std::pair<std::string, BindKind> kT{"t", BindKind::TermB};
const std::pair<std::string, BindKind> kU{"u", BindKind::TermB};

const std::map<std::string, AxiomDef>& axiom_table() {
  static const std::map<std::string, AxiomDef> table = [] {
    std::map<std::string, AxiomDef> m;
    auto F = Formula::imp;  // shorthand in the lambdas below

    // Propositional axioms available in both profiles.
    m["identity"] = {true, true, {{kPhi}, 0}, [](const Bindings& b) {
                       FormulaPtr p = getf(b, "phi", "identity");
                       return Formula::imp(p, p);
                     }};
    m["and-elim-l"] = {true, true, {{kPhi, kPsi}, 0}, [](const Bindings& b) {
                         return Formula::imp(
                             Formula::conj(getf(b, "phi", "and-elim-l"), getf(b, "psi", "and-elim-l")),
                             getf(b, "phi", "and-elim-l"));
                       }};
    m["and-elim-r"] = {true, true, {{kPhi, kPsi}, 0}, [](const Bindings& b) {
                         return Formula::imp(
                             Formula::conj(getf(b, "phi", "and-elim-r"), getf(b, "psi", "and-elim-r")),
                             getf(b, "psi", "and-elim-r"));
                       }};
    m["or-intro-l"] = {true, true, {{kPhi, kPsi}, 0}, [](const Bindings& b) {
                         return Formula::imp(
                             getf(b, "phi", "or-intro-l"),
                             Formula::disj(getf(b, "phi", "or-intro-l"), getf(b, "psi", "or-intro-l")));
                       }};
    m["or-intro-r"] = {true, true, {{kPhi, kPsi}, 0}, [](const Bindings& b) {
                         return Formula::imp(
                             getf(b, "psi", "or-intro-r"),
                             Formula::disj(getf(b, "phi", "or-intro-r"), getf(b, "psi", "or-intro-r")));
                       }};

    // Axioms of the stronger profile only.
    m["and-intro-ax"] = {false, true, {{kPhi, kPsi, kChi}, 0}, [F](const Bindings& b) {
                           FormulaPtr p = getf(b, "phi", "and-intro-ax");
                           FormulaPtr q = getf(b, "psi", "and-intro-ax");
                           FormulaPtr c = getf(b, "chi", "and-intro-ax");
                           return F(Formula::conj(F(p, q), F(p, c)), F(p, Formula::conj(q, c)));
                         }};
    m["or-elim-ax"] = {false, true, {{kPhi, kPsi, kChi}, 0}, [F](const Bindings& b) {
                         FormulaPtr p = getf(b, "phi", "or-elim-ax");
                         FormulaPtr q = getf(b, "psi", "or-elim-ax");
                         FormulaPtr c = getf(b, "chi", "or-elim-ax");
                         return F(Formula::conj(F(p, c), F(q, c)), F(Formula::disj(p, q), c));
                       }};
    m["weakening-ax"] = {false, true, {{kPhi, kPsi}, 0}, [F](const Bindings& b) {
                           FormulaPtr p = getf(b, "phi", "weakening-ax");
                           FormulaPtr q = getf(b, "psi", "weakening-ax");
                           return F(p, F(q, p));
                         }};
    m["bot-elim"] = {false, true, {{kPhi}, 0}, [F](const Bindings& b) {
                       return F(Formula::bot(), getf(b, "phi", "bot-elim"));
                     }};

    // Quantifier axioms (both profiles).
    m["forall-inst"] = {true, true, {{kX, kPhi, kT}, 0}, [F](const Bindings& b) {
                          std::string x = getv(b, "x", "forall-inst");
                          FormulaPtr p = getf(b, "phi", "forall-inst");
                          TermPtr t = gett(b, "t", "forall-inst");
                          return F(Formula::forall(x, p), subst_checked(p, x, t, "forall-inst"));
                        }};
    m["exists-intro"] = {true, true, {{kX, kPhi, kT}, 0}, [F](const Bindings& b) {
                           std::string x = getv(b, "x", "exists-intro");
                           FormulaPtr p = getf(b, "phi", "exists-intro");
                           TermPtr t = gett(b, "t", "exists-intro");
                           return F(subst_checked(p, x, t, "exists-intro"), Formula::exists(x, p));
                         }};

    // Equality axioms (both profiles); schematic in terms.
    m["eq-id"] = {true, true, {{kT}, 0}, [](const Bindings& b) {
                    TermPtr t = gett(b, "t", "eq-id");
                    return Formula::atom_eq(t, t);
                  }};
    m["eq-com"] = {true, true, {{kS, kT}, 0}, [F](const Bindings& b) {
                     TermPtr s = gett(b, "s", "eq-com");
                     TermPtr t = gett(b, "t", "eq-com");
                     return F(Formula::atom_eq(s, t), Formula::atom_eq(t, s));
                   }};
    m["eq-trans"] = {true, true, {{kS, kT, kU}, 0}, [F](const Bindings& b) {
                       TermPtr s = gett(b, "s", "eq-trans");
                       TermPtr t = gett(b, "t", "eq-trans");
                       TermPtr u = gett(b, "u", "eq-trans");
                       return F(Formula::atom_eq(s, t),
                                F(Formula::atom_eq(t, u), Formula::atom_eq(s, u)));
                     }};
    m["eqprin-term"] = {true, true, {{kS, kT, kX, kU}, 0}, [F](const Bindings& b) {
                          TermPtr s = gett(b, "s", "eqprin-term");
                          TermPtr t = gett(b, "t", "eqprin-term");
                          std::string x = getv(b, "x", "eqprin-term");
                          TermPtr u = gett(b, "u", "eqprin-term");
                          return F(Formula::atom_eq(s, t),
                                   Formula::atom_eq(term_subst(u, x, s), term_subst(u, x, t)));
                        }};
    m["eqprin-formula"] = {true, true, {{kS, kT, kX, kPhi}, 0}, [F](const Bindings& b) {
                             TermPtr s = gett(b, "s", "eqprin-formula");
                             TermPtr t = gett(b, "t", "eqprin-formula");
                             std::string x = getv(b, "x", "eqprin-formula");
                             FormulaPtr p = getf(b, "phi", "eqprin-formula");
                             return F(Formula::atom_eq(s, t),
                                      F(subst_checked(p, x, s, "eqprin-formula"),
                                        subst_checked(p, x, t, "eqprin-formula")));
                           }};
    return m;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Rule schemas
// ---------------------------------------------------------------------------

using RuleFn = std::function<FormulaPtr(const std::vector<FormulaPtr>&, const Bindings&,
                                        const std::vector<FormulaPtr>&)>;

struct RuleDef {
  bool ql0 = false, qslw = false;
  SchemaInfo info;
  RuleFn make;
};

const FormulaPtr& need_imp(const FormulaPtr& f, const std::string& id, const char* which) {
  if (f->tag != FormulaTag::Imp)
    fail(std::string("'") + id + "': " + which + " premise must be an implication");
  return f;
}

void need_fresh(const std::string& x, const FormulaPtr& in, const char* what,
                const std::string& id) {
  if (mentions_free(in, x))
    fail("'" + id + "': variable '" + x + "' must not occur free in the " + what);
}

void need_fresh_in_assumptions(const std::string& x, const std::vector<FormulaPtr>& assumptions,
                               const std::string& id) {
  for (const auto& a : assumptions)
    if (mentions_free(a, x))
      fail("'" + id + "': variable '" + x + "' occurs free in an assumption");
}

const std::map<std::string, RuleDef>& rule_table() {
  static const std::map<std::string, RuleDef> table = [] {
    std::map<std::string, RuleDef> m;

    m["mp"] = {true, true, {{}, 2},
               [](const std::vector<FormulaPtr>& p, const Bindings&,
                  const std::vector<FormulaPtr>&) {
                 const FormulaPtr& imp = need_imp(p[1], "mp", "second");
                 if (!kernel_equal(imp->l, p[0]))
                   fail("'mp': first premise does not match the antecedent of the second");
                 return imp->r;
               }};
    m["weakening"] = {true, false, {{kPsi}, 1},
                      [](const std::vector<FormulaPtr>& p, const Bindings& b,
                         const std::vector<FormulaPtr>&) {
                        return Formula::imp(getf(b, "psi", "weakening"), p[0]);
                      }};
    m["assertion"] = {true, true, {{kPsi}, 1},
                      [](const std::vector<FormulaPtr>& p, const Bindings& b,
                         const std::vector<FormulaPtr>&) {
                        FormulaPtr q = getf(b, "psi", "assertion");
                        return Formula::imp(Formula::imp(p[0], q), q);
                      }};
    m["trans-imp"] = {true, false, {{}, 2},
                      [](const std::vector<FormulaPtr>& p, const Bindings&,
                         const std::vector<FormulaPtr>&) {
                        const FormulaPtr& ab = need_imp(p[0], "trans-imp", "first");
                        const FormulaPtr& bc = need_imp(p[1], "trans-imp", "second");
                        if (!kernel_equal(ab->r, bc->l))
                          fail("'trans-imp': middle formulas do not match");
                        return Formula::imp(ab->l, bc->r);
                      }};
    m["and-intro"] = {true, false, {{}, 2},
                      [](const std::vector<FormulaPtr>& p, const Bindings&,
                         const std::vector<FormulaPtr>&) {
                        const FormulaPtr& ab = need_imp(p[0], "and-intro", "first");
                        const FormulaPtr& ac = need_imp(p[1], "and-intro", "second");
                        if (!kernel_equal(ab->l, ac->l))
                          fail("'and-intro': premises have different antecedents");
                        return Formula::imp(ab->l, Formula::conj(ab->r, ac->r));
                      }};
    m["or-elim"] = {true, false, {{}, 2},
                    [](const std::vector<FormulaPtr>& p, const Bindings&,
                       const std::vector<FormulaPtr>&) {
                      const FormulaPtr& ac = need_imp(p[0], "or-elim", "first");
                      const FormulaPtr& bc = need_imp(p[1], "or-elim", "second");
                      if (!kernel_equal(ac->r, bc->r))
                        fail("'or-elim': premises have different consequents");
                      return Formula::imp(Formula::disj(ac->l, bc->l), ac->r);
                    }};
    m["morg"] = {true, false, {{}, 1},
                 [](const std::vector<FormulaPtr>& p, const Bindings&,
                    const std::vector<FormulaPtr>&) {
                   // !a | !b  yields  !(a & b)
                   if (p[0]->tag != FormulaTag::Or || !is_neg(p[0]->l) || !is_neg(p[0]->r))
                     throw CheckError("morg: premise must be a disjunction of two negations");
                   return Formula::neg(Formula::conj(p[0]->l->l, p[0]->r->l));
                 }};
    m["adj"] = {false, true, {{}, 2},
                [](const std::vector<FormulaPtr>& p, const Bindings&,
                   const std::vector<FormulaPtr>&) { return Formula::conj(p[0], p[1]); }};
    m["tone-imp"] = {false, true, {{}, 2},
                     [](const std::vector<FormulaPtr>& p, const Bindings&,
                        const std::vector<FormulaPtr>&) {
                       const FormulaPtr& ab = need_imp(p[0], "tone-imp", "first");
                       const FormulaPtr& cd = need_imp(p[1], "tone-imp", "second");
                       return Formula::imp(Formula::imp(ab->r, cd->l),
                                           Formula::imp(ab->l, cd->r));
                     }};

    // Quantifier rules (both profiles).
    m["forall-intro"] = {true, true, {{kX}, 1},
                         [](const std::vector<FormulaPtr>& p, const Bindings& b,
                            const std::vector<FormulaPtr>& assumptions) {
                           const FormulaPtr& imp = need_imp(p[0], "forall-intro", "only");
                           std::string x = getv(b, "x", "forall-intro");
                           need_fresh(x, imp->l, "antecedent", "forall-intro");
                           need_fresh_in_assumptions(x, assumptions, "forall-intro");
                           return Formula::imp(imp->l, Formula::forall(x, imp->r));
                         }};
    m["exists-elim"] = {true, true, {{kX}, 1},
                        [](const std::vector<FormulaPtr>& p, const Bindings& b,
                           const std::vector<FormulaPtr>& assumptions) {
                          const FormulaPtr& imp = need_imp(p[0], "exists-elim", "only");
                          std::string x = getv(b, "x", "exists-elim");
                          need_fresh(x, imp->r, "consequent", "exists-elim");
                          need_fresh_in_assumptions(x, assumptions, "exists-elim");
                          return Formula::imp(Formula::exists(x, imp->l), imp->r);
                        }};
    return m;
  }();
  return table;
}

bool in_profile(Profile p, bool ql0, bool qslw) {
  return p == Profile::QL0 ? ql0 : qslw;
}

}  // namespace

const SchemaInfo* axiom_info(Profile profile, const std::string& id) {
  auto it = axiom_table().find(id);
  if (it == axiom_table().end() || !in_profile(profile, it->second.ql0, it->second.qslw))
    return nullptr;
  return &it->second.info;
}

const SchemaInfo* rule_info(Profile profile, const std::string& id) {
  auto it = rule_table().find(id);
  if (it == rule_table().end() || !in_profile(profile, it->second.ql0, it->second.qslw))
    return nullptr;
  return &it->second.info;
}

FormulaPtr compute_axiom(Profile profile, const std::string& id, const Bindings& b) {
  auto it = axiom_table().find(id);
  if (it == axiom_table().end() || !in_profile(profile, it->second.ql0, it->second.qslw))
    fail("unknown axiom '" + id + "' in profile " + to_string(profile));
  check_no_extra(b, it->second.info, id);
  return it->second.make(b);
}

FormulaPtr compute_rule(Profile profile, const std::string& id,
                        const std::vector<FormulaPtr>& premises, const Bindings& b,
                        const std::vector<FormulaPtr>& assumptions) {
  auto it = rule_table().find(id);
  if (it == rule_table().end() || !in_profile(profile, it->second.ql0, it->second.qslw))
    fail("unknown rule '" + id + "' in profile " + to_string(profile));
  if (premises.size() != it->second.info.arity)
    fail("rule '" + id + "' expects " + std::to_string(it->second.info.arity) +
         " premises, got " + std::to_string(premises.size()));
  check_no_extra(b, it->second.info, id);
  return it->second.make(premises, b, assumptions);
}

// ---------------------------------------------------------------------------
// The checker
// ---------------------------------------------------------------------------

Judgment check(const ProofScript& script) {
  if (script.steps.empty()) throw CheckError("script has no steps");

  std::vector<FormulaPtr> assumption_formulas;
  for (std::size_t i = 0; i < script.assumptions.size(); ++i) {
    const auto& [id, f] = script.assumptions[i];
    if (!f) throw CheckError("assumption '" + id + "' has no formula");
    if (!is_relational(f))
      throw CheckError("assumption '" + id + "' is outside the relational language");
    for (std::size_t j = 0; j < i; ++j)
      if (script.assumptions[j].first == id)
        throw CheckError("duplicate assumption id '" + id + "'");
    assumption_formulas.push_back(f);
  }

  for (std::size_t idx = 0; idx < script.steps.size(); ++idx) {
    const Step& st = script.steps[idx];
    try {
      if (!st.conclusion) fail("step has no stated conclusion");
      if (!is_relational(st.conclusion))
        fail("stated conclusion is outside the relational language");

      FormulaPtr computed;
      switch (st.kind) {
        case StepKind::Axiom: {
          if (!st.premises.empty()) fail("axiom step must not reference premises");
          if (!st.params.empty()) fail("axiom step takes no numeral parameters");
          computed = compute_axiom(script.profile, st.id, st.bindings);
          break;
        }
        case StepKind::Theory: {
          if (!st.premises.empty()) fail("theory step must not reference premises");
          const std::pair<std::string, FormulaPtr>* assumed = nullptr;
          for (const auto& a : script.assumptions)
            if (a.first == st.id) assumed = &a;
          if (assumed) {
            if (!st.params.empty()) fail("assumption reference takes no parameters");
            if (!st.bindings.empty()) fail("assumption reference takes no bindings");
            computed = assumed->second;
          } else {
            if (!st.bindings.empty()) fail("theory axiom takes no bindings");
            if (script.theory == TheoryKind::None)
              fail("step uses theory axiom '" + st.id + "' but the script declares no theory");
            computed = theory_axiom(script.theory, st.id, st.params);
          }
          break;
        }
        case StepKind::Rule: {
          std::vector<FormulaPtr> premises;
          for (std::size_t p : st.premises) {
            if (p >= idx) fail("rule premise must reference an earlier step");
            premises.push_back(expand_bounded(script.steps[p].conclusion));
          }
          computed =
              compute_rule(script.profile, st.id, premises, st.bindings, assumption_formulas);
          break;
        }
      }
      if (!kernel_equal(computed, st.conclusion))
        fail("stated conclusion does not match the computed one (computed: " +
             to_string(computed) + ")");
    } catch (const CheckError& e) {
      throw CheckError(e.what(), idx);
    } catch (const FormError& e) {
      throw CheckError(e.what(), idx);
    }
  }

  return {script.profile, script.theory, assumption_formulas, script.steps.back().conclusion};
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

ProofScript compose(const ProofScript& outer, const std::string& assume_id,
                    const ProofScript& inner) {
  if (outer.profile != inner.profile)
    throw CheckError("compose: profiles differ (" + to_string(outer.profile) + " vs " +
                     to_string(inner.profile) + ")");
  if (inner.theory != TheoryKind::None && outer.theory != TheoryKind::None &&
      inner.theory != outer.theory)
    throw CheckError("compose: theories differ");
  if (inner.steps.empty()) throw CheckError("compose: inner script has no steps");

  const FormulaPtr* target = nullptr;
  for (const auto& [id, f] : outer.assumptions)
    if (id == assume_id) target = &f;
  if (!target) throw CheckError("compose: outer script has no assumption '" + assume_id + "'");
  if (!kernel_equal(*target, inner.theorem()))
    throw CheckError("compose: inner theorem does not prove assumption '" + assume_id + "'");
  if (outer.steps.empty() ||
      (outer.steps.back().kind == StepKind::Theory && outer.steps.back().id == assume_id))
    throw CheckError("compose: outer script must end on a step other than the assumption");

  ProofScript out;
  out.profile = outer.profile;
  out.theory = outer.theory == TheoryKind::None ? inner.theory : outer.theory;

  // Remaining outer assumptions, then inner's (ids must stay unique).
  for (const auto& a : outer.assumptions)
    if (a.first != assume_id) out.assumptions.push_back(a);
  for (const auto& a : inner.assumptions) {
    for (const auto& b : out.assumptions)
      if (b.first == a.first)
        throw CheckError("compose: assumption id '" + a.first + "' appears on both sides");
    out.assumptions.push_back(a);
  }

  out.steps = inner.steps;
  const std::size_t offset = inner.steps.size();
  const std::size_t proved_at = offset - 1;

  // Outer steps shift by `offset`; references to the discharged assumption
  // become references to the inner proof's final step.
  std::vector<std::size_t> remap(outer.steps.size());
  std::size_t new_index = offset;
  for (std::size_t i = 0; i < outer.steps.size(); ++i) {
    const Step& st = outer.steps[i];
    if (st.kind == StepKind::Theory && st.id == assume_id) {
      remap[i] = proved_at;
      continue;
    }
    Step moved = st;
    for (auto& p : moved.premises) p = remap[p];
    out.steps.push_back(std::move(moved));
    remap[i] = new_index++;
  }
  if (out.steps.size() == offset)
    throw CheckError("compose: outer script has no steps besides the assumption");
  return out;
}

}  // namespace relic
