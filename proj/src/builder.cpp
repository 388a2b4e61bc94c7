#include "relic/builder.hpp"

#include <algorithm>

#include "relic/theories.hpp"

namespace relic {

namespace {

[[noreturn]] void die(const std::string& msg) { throw CheckError("builder: " + msg); }

// Splits an implication, failing loudly otherwise.
void split_imp(const FormulaPtr& f, FormulaPtr& l, FormulaPtr& r, const char* who) {
  FormulaPtr e = expand_bounded(f);
  if (e->tag != FormulaTag::Imp) die(std::string(who) + ": step is not an implication");
  l = e->l;
  r = e->r;
}

}  // namespace

ScriptBuilder::ScriptBuilder(Profile profile, TheoryKind theory) {
  script_.profile = profile;
  script_.theory = theory;
}

std::size_t ScriptBuilder::push(Step st) {
  script_.steps.push_back(std::move(st));
  return script_.steps.size() - 1;
}

std::vector<FormulaPtr> ScriptBuilder::assumption_formulas() const {
  std::vector<FormulaPtr> out;
  for (const auto& [id, f] : script_.assumptions) out.push_back(f);
  return out;
}

FormulaPtr ScriptBuilder::conc(std::size_t i) const {
  if (i >= script_.steps.size()) die("step index out of range");
  return script_.steps[i].conclusion;
}

FormulaPtr ScriptBuilder::conc_x(std::size_t i) const { return expand_bounded(conc(i)); }

std::size_t ScriptBuilder::last() const {
  if (script_.steps.empty()) die("empty script");
  return script_.steps.size() - 1;
}

Judgment ScriptBuilder::finish() const { return check(script_); }

std::size_t ScriptBuilder::axiom(const std::string& id, Bindings bindings) {
  Step st;
  st.kind = StepKind::Axiom;
  st.id = id;
  st.bindings = std::move(bindings);
  st.conclusion = compute_axiom(script_.profile, id, st.bindings);
  return push(std::move(st));
}

std::size_t ScriptBuilder::theory_step(const std::string& name,
                                       std::vector<std::uint64_t> params) {
  Step st;
  st.kind = StepKind::Theory;
  st.id = name;
  st.params = std::move(params);
  st.conclusion = theory_axiom(script_.theory, name, st.params);
  return push(std::move(st));
}

std::size_t ScriptBuilder::rule(const std::string& id, std::vector<std::size_t> premises,
                                Bindings bindings) {
  Step st;
  st.kind = StepKind::Rule;
  st.id = id;
  st.bindings = std::move(bindings);
  std::vector<FormulaPtr> prem;
  for (std::size_t p : premises) {
    if (p >= script_.steps.size()) die("rule premise out of range");
    prem.push_back(conc_x(p));
  }
  st.premises = std::move(premises);
  st.conclusion = compute_rule(script_.profile, id, prem, st.bindings, assumption_formulas());
  return push(std::move(st));
}

std::size_t ScriptBuilder::assume(const std::string& id, FormulaPtr f) {
  if (!is_relational(f)) die("assumption must be a relational formula");
  for (const auto& [aid, af] : script_.assumptions)
    if (aid == id) die("duplicate assumption id '" + id + "'");
  script_.assumptions.emplace_back(id, f);
  return hyp(id);
}

std::size_t ScriptBuilder::hyp(const std::string& id) {
  for (const auto& [aid, af] : script_.assumptions) {
    if (aid == id) {
      Step st;
      st.kind = StepKind::Theory;
      st.id = id;
      st.conclusion = af;
      return push(std::move(st));
    }
  }
  die("unknown assumption '" + id + "'");
}

std::size_t ScriptBuilder::identity(FormulaPtr phi) {
  return axiom("identity", {{"phi", Binding::of_formula(std::move(phi))}});
}

std::size_t ScriptBuilder::mp(std::size_t p, std::size_t imp) { return rule("mp", {p, imp}); }

std::size_t ScriptBuilder::weaken(std::size_t i, FormulaPtr psi) {
  if (script_.profile == Profile::QL0)
    return rule("weakening", {i}, {{"psi", Binding::of_formula(std::move(psi))}});
  Bindings b;
  b["phi"] = Binding::of_formula(conc(i));
  b["psi"] = Binding::of_formula(std::move(psi));
  std::size_t ax = axiom("weakening-ax", std::move(b));
  return mp(i, ax);
}

std::size_t ScriptBuilder::trans(std::size_t i, std::size_t j) {
  if (script_.profile == Profile::QL0) return rule("trans-imp", {i, j});
  FormulaPtr a, b, b2, c;
  split_imp(conc(i), a, b, "trans");
  split_imp(conc(j), b2, c, "trans");
  if (!kernel_equal(b, b2)) die("trans: implications do not chain");
  std::size_t tone = rule("tone-imp", {i, j});  // (b -> b) -> (a -> c)
  std::size_t id = identity(b);
  return mp(id, tone);
}

std::size_t ScriptBuilder::adjoin(std::size_t i, std::size_t j) {
  if (script_.profile == Profile::QSLw) return rule("adj", {i, j});
  FormulaPtr phi = conc(i);
  std::size_t w = weaken(j, phi);       // phi -> psi
  std::size_t id = identity(phi);       // phi -> phi
  std::size_t a = rule("and-intro", {id, w});
  return mp(i, a);
}

std::size_t ScriptBuilder::and_intro(std::size_t i, std::size_t j) {
  if (script_.profile == Profile::QL0) return rule("and-intro", {i, j});
  FormulaPtr chi, a, chi2, b;
  split_imp(conc(i), chi, a, "and_intro");
  split_imp(conc(j), chi2, b, "and_intro");
  if (!kernel_equal(chi, chi2)) die("and_intro: antecedents differ");
  std::size_t both = rule("adj", {i, j});
  Bindings bb;
  bb["phi"] = Binding::of_formula(chi);
  bb["psi"] = Binding::of_formula(a);
  bb["chi"] = Binding::of_formula(b);
  std::size_t ax = axiom("and-intro-ax", std::move(bb));
  return mp(both, ax);
}

std::size_t ScriptBuilder::or_elim(std::size_t i, std::size_t j) {
  if (script_.profile == Profile::QL0) return rule("or-elim", {i, j});
  FormulaPtr a, chi, b, chi2;
  split_imp(conc(i), a, chi, "or_elim");
  split_imp(conc(j), b, chi2, "or_elim");
  if (!kernel_equal(chi, chi2)) die("or_elim: consequents differ");
  std::size_t both = rule("adj", {i, j});
  Bindings bb;
  bb["phi"] = Binding::of_formula(a);
  bb["psi"] = Binding::of_formula(b);
  bb["chi"] = Binding::of_formula(chi);
  std::size_t ax = axiom("or-elim-ax", std::move(bb));
  return mp(both, ax);
}

std::size_t ScriptBuilder::contrapose(std::size_t i) {
  if (script_.profile != Profile::QSLw) die("contrapose: needs the stronger profile");
  std::size_t id = identity(Formula::bot());  // bot -> bot
  return rule("tone-imp", {i, id});           // (psi -> bot) -> (phi -> bot)
}

std::size_t ScriptBuilder::suffix_with(std::size_t i, FormulaPtr chi) {
  if (script_.profile != Profile::QSLw) die("suffix_with: needs the stronger profile");
  std::size_t id = identity(std::move(chi));
  return rule("tone-imp", {i, id});  // (psi -> chi) -> (phi -> chi)
}

std::size_t ScriptBuilder::prefix_with(std::size_t i, FormulaPtr chi) {
  if (script_.profile != Profile::QSLw) die("prefix_with: needs the stronger profile");
  std::size_t id = identity(std::move(chi));
  return rule("tone-imp", {id, i});  // (chi -> phi) -> (chi -> psi)
}

std::size_t ScriptBuilder::morg(std::size_t i) {
  if (script_.profile == Profile::QL0) return rule("morg", {i});
  FormulaPtr d = conc_x(i);
  if (d->tag != FormulaTag::Or || !is_neg(d->l) || !is_neg(d->r))
    die("morg: step is not a disjunction of two negations");
  FormulaPtr a = d->l->l;
  FormulaPtr b = d->r->l;
  Bindings bl;
  bl["phi"] = Binding::of_formula(a);
  bl["psi"] = Binding::of_formula(b);
  std::size_t el = axiom("and-elim-l", bl);          // a&b -> a
  std::size_t cl = contrapose(el);                   // !a -> !(a&b)
  std::size_t er = axiom("and-elim-r", bl);          // a&b -> b
  std::size_t cr = contrapose(er);                   // !b -> !(a&b)
  std::size_t both = or_elim(cl, cr);                // !a | !b -> !(a&b)
  return mp(i, both);
}

std::size_t ScriptBuilder::red(FormulaPtr phi, FormulaPtr chi) {
  if (script_.profile != Profile::QSLw) die("red: needs the stronger profile");
  std::size_t id = identity(phi);  // phi -> phi
  std::size_t be = axiom("bot-elim", {{"phi", Binding::of_formula(std::move(chi))}});
  return rule("tone-imp", {id, be});  // (phi -> bot) -> (phi -> chi)
}

std::size_t ScriptBuilder::weakening_strong(FormulaPtr phi, FormulaPtr psi) {
  if (script_.profile != Profile::QSLw) die("weakening_strong: needs the stronger profile");
  Bindings wb;
  wb["phi"] = Binding::of_formula(phi);
  wb["psi"] = Binding::of_formula(psi);
  std::size_t w2 = axiom("weakening-ax", wb);  // phi -> (psi -> phi)
  std::size_t idp = identity(psi);             // psi -> psi
  Bindings w1b;
  w1b["phi"] = Binding::of_formula(Formula::imp(psi, psi));
  w1b["psi"] = Binding::of_formula(phi);
  std::size_t w1x = axiom("weakening-ax", w1b);  // (psi->psi) -> (phi -> (psi->psi))
  std::size_t m1 = mp(idp, w1x);                 // phi -> (psi -> psi)
  std::size_t outer = and_intro(w2, m1);         // phi -> ((psi->phi) & (psi->psi))
  Bindings ab;
  ab["phi"] = Binding::of_formula(psi);
  ab["psi"] = Binding::of_formula(phi);
  ab["chi"] = Binding::of_formula(psi);
  std::size_t ax = axiom("and-intro-ax", ab);  // ((psi->phi)&(psi->psi)) -> (psi -> phi&psi)
  return trans(outer, ax);                     // phi -> (psi -> phi & psi)
}

std::size_t ScriptBuilder::exp(std::size_t i) {
  if (script_.profile != Profile::QSLw) die("exp: needs the stronger profile");
  FormulaPtr conj, chi;
  split_imp(conc(i), conj, chi, "exp");
  if (conj->tag != FormulaTag::And) die("exp: antecedent is not a conjunction");
  FormulaPtr phi = conj->l;
  FormulaPtr psi = conj->r;
  std::size_t ws = weakening_strong(phi, psi);  // phi -> (psi -> phi&psi)
  std::size_t p1 = prefix_with(i, psi);         // (psi -> phi&psi) -> (psi -> chi)
  std::size_t p2 = prefix_with(p1, phi);        // (phi -> (psi->phi&psi)) -> (phi -> (psi->chi))
  return mp(ws, p2);
}

std::size_t ScriptBuilder::crisp_import(std::size_t cert, std::size_t i) {
  if (script_.profile != Profile::QSLw) die("crisp_import: needs the stronger profile");
  FormulaPtr c = conc_x(cert);
  if (c->tag != FormulaTag::Or || !is_neg(c->r) || !kernel_equal(c->l, c->r->l))
    die("crisp_import: certificate is not of the form phi | !phi");
  FormulaPtr phi, rest, psi, chi;
  split_imp(conc(i), phi, rest, "crisp_import");
  if (!kernel_equal(phi, c->l)) die("crisp_import: certificate does not match the antecedent");
  split_imp(rest, psi, chi, "crisp_import");
  Bindings eb;
  eb["phi"] = Binding::of_formula(phi);
  eb["psi"] = Binding::of_formula(psi);
  std::size_t er = axiom("and-elim-r", eb);      // phi&psi -> psi
  std::size_t s1 = suffix_with(er, chi);         // (psi->chi) -> (phi&psi -> chi)
  std::size_t el = axiom("and-elim-l", eb);      // phi&psi -> phi
  std::size_t s2 = suffix_with(el, chi);         // (phi->chi) -> (phi&psi -> chi)
  std::size_t t3 = trans(i, s1);                 // phi -> (phi&psi -> chi)
  std::size_t r = red(phi, chi);                 // !phi -> (phi -> chi)
  std::size_t t4 = trans(r, s2);                 // !phi -> (phi&psi -> chi)
  std::size_t o = or_elim(t3, t4);               // phi | !phi -> (phi&psi -> chi)
  return mp(cert, o);                            // phi & psi -> chi
}

std::size_t ScriptBuilder::crisp_or(std::size_t cert_a, std::size_t cert_b) {
  if (script_.profile != Profile::QSLw) die("crisp_or: needs the stronger profile");
  FormulaPtr ca = conc_x(cert_a);
  FormulaPtr cb = conc_x(cert_b);
  auto split_cert = [](const FormulaPtr& c) {
    if (c->tag != FormulaTag::Or || !is_neg(c->r) || !kernel_equal(c->l, c->r->l))
      die("crisp_or: certificate is not of the form phi | !phi");
    return c->l;
  };
  FormulaPtr a = split_cert(ca);
  FormulaPtr b = split_cert(cb);
  FormulaPtr ab = Formula::disj(a, b);
  FormulaPtr chi = Formula::disj(ab, Formula::neg(ab));
  Bindings ob;
  ob["phi"] = Binding::of_formula(a);
  ob["psi"] = Binding::of_formula(b);
  std::size_t i1 = axiom("or-intro-l", ob);  // a -> a|b
  std::size_t i3 = axiom("or-intro-r", ob);  // b -> a|b
  Bindings cbnd;
  cbnd["phi"] = Binding::of_formula(ab);
  cbnd["psi"] = Binding::of_formula(Formula::neg(ab));
  std::size_t i2 = axiom("or-intro-l", cbnd);  // a|b -> chi
  std::size_t i4 = axiom("or-intro-r", cbnd);  // !(a|b) -> chi
  std::size_t t1 = trans(i1, i2);              // a -> chi
  std::size_t t2 = trans(i3, i2);              // b -> chi
  Bindings mb;
  mb["phi"] = Binding::of_formula(a);
  mb["psi"] = Binding::of_formula(b);
  mb["chi"] = Binding::of_formula(Formula::bot());
  std::size_t m = axiom("or-elim-ax", mb);  // (!a & !b) -> !(a|b)
  std::size_t t3 = trans(m, i4);            // !a & !b -> chi
  std::size_t e = exp(t3);                  // !a -> (!b -> chi)
  Bindings wb;
  wb["phi"] = Binding::of_formula(chi);
  wb["psi"] = Binding::of_formula(Formula::neg(b));
  std::size_t w = axiom("weakening-ax", wb);  // chi -> (!b -> chi)
  std::size_t t4 = trans(t1, w);              // a -> (!b -> chi)
  std::size_t o1 = or_elim(t4, e);            // a | !a -> (!b -> chi)
  std::size_t m1 = mp(cert_a, o1);            // !b -> chi
  std::size_t o2 = or_elim(t2, m1);           // b | !b -> chi
  return mp(cert_b, o2);                      // (a|b) | !(a|b)
}

std::size_t ScriptBuilder::aux_imp(std::size_t i, const std::string& x, FormulaPtr phi,
                                   TermPtr t) {
  if (!kernel_equal(substitute(phi, x, t), conc_x(i)))
    die("aux_imp: template does not match the instance step");
  Bindings cb;
  cb["s"] = Binding::of_term(Term::var(x));
  cb["t"] = Binding::of_term(t);
  std::size_t c = axiom("eq-com", cb);  // x=t -> t=x
  Bindings pb;
  pb["s"] = Binding::of_term(t);
  pb["t"] = Binding::of_term(Term::var(x));
  pb["x"] = Binding::of_var(x);
  pb["phi"] = Binding::of_formula(phi);
  std::size_t p = axiom("eqprin-formula", pb);  // t=x -> (phi[t] -> phi[x])
  std::size_t t1 = trans(c, p);                 // x=t -> (phi[t] -> phi[x])
  std::size_t a = rule("assertion", {i}, {{"psi", Binding::of_formula(phi)}});
  // a: (phi[t] -> phi[x]) -> phi[x]
  return trans(t1, a);  // x=t -> phi[x]
}

std::size_t ScriptBuilder::dni(std::size_t i) {
  return rule("assertion", {i}, {{"psi", Binding::of_formula(Formula::bot())}});
}

std::size_t ScriptBuilder::com(std::size_t i) {
  FormulaPtr f = conc_x(i);
  if (f->tag != FormulaTag::Atom || f->atom != AtomTag::Eq) die("com: step is not an equation");
  Bindings b;
  b["s"] = Binding::of_term(f->args[0]);
  b["t"] = Binding::of_term(f->args[1]);
  std::size_t ax = axiom("eq-com", std::move(b));
  return mp(i, ax);
}

std::size_t ScriptBuilder::aux(std::size_t eq, std::size_t instp, const std::string& x,
                               FormulaPtr phi) {
  FormulaPtr e = conc_x(eq);
  if (e->tag != FormulaTag::Atom || e->atom != AtomTag::Eq) die("aux: step is not an equation");
  TermPtr s = e->args[0];
  TermPtr t = e->args[1];
  if (!kernel_equal(substitute(phi, x, s), conc_x(instp)))
    die("aux: template does not match the instance step");
  Bindings b;
  b["s"] = Binding::of_term(s);
  b["t"] = Binding::of_term(t);
  b["x"] = Binding::of_var(x);
  b["phi"] = Binding::of_formula(phi);
  std::size_t ax = axiom("eqprin-formula", std::move(b));  // s=t -> (phi[s] -> phi[t])
  std::size_t step = mp(eq, ax);
  return mp(instp, step);
}

std::size_t ScriptBuilder::gen(std::size_t i, const std::string& x) {
  FormulaPtr chi = Formula::atom_eq(Term::zero(), Term::zero());
  std::size_t w = weaken(i, chi);  // 0=0 -> phi
  std::size_t all = rule("forall-intro", {w}, {{"x", Binding::of_var(x)}});
  std::size_t e = axiom("eq-id", {{"t", Binding::of_term(Term::zero())}});
  return mp(e, all);
}

std::size_t ScriptBuilder::inst(std::size_t i, TermPtr t) {
  FormulaPtr f = conc_x(i);
  if (f->tag != FormulaTag::Forall) die("inst: step is not universally quantified");
  Bindings b;
  b["x"] = Binding::of_var(f->var);
  b["phi"] = Binding::of_formula(f->l);
  b["t"] = Binding::of_term(std::move(t));
  std::size_t ax = axiom("forall-inst", std::move(b));
  return mp(i, ax);
}

std::size_t ScriptBuilder::instantiate(
    std::size_t i, const std::vector<std::pair<std::string, TermPtr>>& subs) {
  for (std::size_t k = 0; k < subs.size(); ++k) {
    for (std::size_t l = k + 1; l < subs.size(); ++l) {
      if (term_mentions(subs[k].second, subs[l].first))
        die("instantiate: substituted term mentions a variable instantiated later");
    }
  }
  std::size_t cur = i;
  for (const auto& [x, t] : subs) {
    cur = gen(cur, x);
    cur = inst(cur, t);
  }
  return cur;
}

std::size_t ScriptBuilder::ex_intro(std::size_t i, const std::string& x, FormulaPtr phi,
                                    TermPtr t) {
  if (!kernel_equal(substitute(phi, x, t), conc_x(i)))
    die("ex_intro: template does not match the instance step");
  Bindings b;
  b["x"] = Binding::of_var(x);
  b["phi"] = Binding::of_formula(std::move(phi));
  b["t"] = Binding::of_term(std::move(t));
  std::size_t ax = axiom("exists-intro", std::move(b));
  return mp(i, ax);
}

std::size_t ScriptBuilder::ex_elim(std::size_t i, const std::string& x) {
  return rule("exists-elim", {i}, {{"x", Binding::of_var(x)}});
}

std::size_t ScriptBuilder::imp_into_disjunction(FormulaPtr big, FormulaPtr disjunct) {
  // Collect the left-nested disjuncts d1 | d2 | ... | dk.
  std::vector<FormulaPtr> ds;
  FormulaPtr cur = big;
  while (cur->tag == FormulaTag::Or) {
    ds.push_back(cur->r);
    cur = cur->l;
  }
  ds.push_back(cur);
  std::reverse(ds.begin(), ds.end());

  std::size_t m = ds.size();
  for (std::size_t k = 0; k < ds.size(); ++k) {
    if (kernel_equal(ds[k], disjunct)) {
      m = k;
      break;
    }
  }
  if (m == ds.size()) die("imp_into_disjunction: not a disjunct of the target");

  // prefix[j] = d1 | ... | d(j+1), left-nested.
  std::vector<FormulaPtr> prefix(ds.size());
  prefix[0] = ds[0];
  for (std::size_t j = 1; j < ds.size(); ++j) prefix[j] = Formula::disj(prefix[j - 1], ds[j]);

  std::size_t step;
  std::size_t next;
  if (ds.size() == 1) return identity(ds[0]);
  if (m == 0) {
    Bindings b;
    b["phi"] = Binding::of_formula(ds[0]);
    b["psi"] = Binding::of_formula(ds[1]);
    step = axiom("or-intro-l", std::move(b));  // d1 -> d1|d2
    next = 2;
  } else {
    Bindings b;
    b["phi"] = Binding::of_formula(prefix[m - 1]);
    b["psi"] = Binding::of_formula(ds[m]);
    step = axiom("or-intro-r", std::move(b));  // dm -> prefix[m]
    next = m + 1;
  }
  for (std::size_t j = next; j < ds.size(); ++j) {
    Bindings b;
    b["phi"] = Binding::of_formula(prefix[j - 1]);
    b["psi"] = Binding::of_formula(ds[j]);
    std::size_t up = axiom("or-intro-l", std::move(b));  // prefix[j-1] -> prefix[j]
    step = trans(step, up);
  }
  return step;
}

std::size_t ScriptBuilder::fold_or_elim(const std::vector<std::size_t>& cases) {
  if (cases.empty()) die("fold_or_elim: no cases");
  std::size_t cur = cases[0];
  for (std::size_t k = 1; k < cases.size(); ++k) cur = or_elim(cur, cases[k]);
  return cur;
}

}  // namespace relic
