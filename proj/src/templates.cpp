#include "relic/templates.hpp"

#include <filesystem>
#include <fstream>

#include "relic/builder.hpp"
#include "relic/meta.hpp"
#include "relic/script_io.hpp"

namespace relic {

namespace {

FormulaPtr rel(const std::string& s) { return parse_formula(s, ParseMode::Relational); }

// The concrete atoms the propositional templates are instantiated with.
FormulaPtr fa() { return rel("x = 0"); }
FormulaPtr fb() { return rel("y = 0"); }
FormulaPtr fc() { return rel("z = 0"); }
FormulaPtr fd() { return rel("w = 0"); }

// --- weak profile -----------------------------------------------------------

// (a | (b | c)) <-> ((a | b) | c), conjoined from both directions.
ProofScript t_or_associativity() {
  ScriptBuilder sb(Profile::QL0);
  FormulaPtr a = fa(), b = fb(), c = fc();
  FormulaPtr right = Formula::disj(a, Formula::disj(b, c));
  FormulaPtr left = Formula::disj(Formula::disj(a, b), c);

  // right -> left
  std::size_t a_l = sb.imp_into_disjunction(left, a);
  std::size_t b_l = sb.imp_into_disjunction(left, b);
  std::size_t c_l = sb.imp_into_disjunction(left, c);
  std::size_t bc_l = sb.or_elim(b_l, c_l);  // (b|c) -> left ... but right is a|(b|c)
  // right = a | (b|c) is not left-nested the same way; fold manually:
  std::size_t rl = sb.or_elim(a_l, bc_l);  // a | (b|c) -> left

  // left -> right
  std::size_t a_r = sb.imp_into_disjunction(right, a);  // a -> right handles a|(b|c)? no
  std::size_t b_r0 = sb.imp_into_disjunction(Formula::disj(b, c), b);
  std::size_t up = sb.axiom("or-intro-r", {{"phi", Binding::of_formula(a)},
                                           {"psi", Binding::of_formula(Formula::disj(b, c))}});
  std::size_t b_r = sb.trans(b_r0, up);  // b -> right
  std::size_t c_r0 = sb.imp_into_disjunction(Formula::disj(b, c), c);
  std::size_t c_r = sb.trans(c_r0, up);  // c -> right
  std::size_t ab_r = sb.or_elim(a_r, b_r);
  std::size_t lr = sb.or_elim(ab_r, c_r);  // (a|b)|c -> right

  sb.adjoin(rl, lr);
  return sb.take();
}

// From theorems a and b, the conjunction a & b.
ProofScript t_adjunction() {
  ScriptBuilder sb(Profile::QL0);
  std::size_t a = sb.assume("first", fa());
  std::size_t b = sb.assume("second", fb());
  sb.adjoin(a, b);
  return sb.take();
}

// From a theorem a, its double negation.
ProofScript t_double_negation() {
  ScriptBuilder sb(Profile::QL0);
  std::size_t a = sb.assume("fact", fa());
  sb.dni(a);
  return sb.take();
}

// From a theorem phi(t), the transfer implication x = t -> phi(x).
ProofScript t_equality_transfer() {
  ScriptBuilder sb(Profile::QL0);
  FormulaPtr phi = rel("A(v, S(0), z)");
  TermPtr t = parse_term("S(0)", ParseMode::Relational);
  std::size_t inst = sb.assume("fact", substitute(phi, "v", t));
  sb.aux_imp(inst, "v", phi, t);
  return sb.take();
}

// From the reflexivity axiom, the universally quantified law.
ProofScript t_generalization() {
  ScriptBuilder sb(Profile::QL0);
  std::size_t e = sb.axiom("eq-id", {{"t", Binding::of_term(Term::var("x"))}});
  sb.gen(e, "x");
  return sb.take();
}

// --- stronger profile: derived implication manipulations --------------------

ProofScript t_suffixing() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p = sb.assume("imp", Formula::imp(fa(), fb()));
  sb.suffix_with(p, fc());
  return sb.take();
}

ProofScript t_prefixing() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p = sb.assume("imp", Formula::imp(fa(), fb()));
  sb.prefix_with(p, fc());
  return sb.take();
}

// The two-premise tonicity rule recovered from suffixing and prefixing.
ProofScript t_tone_from_suffix_prefix() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p1 = sb.assume("rising", Formula::imp(fa(), fb()));   // a -> b
  std::size_t p2 = sb.assume("falling", Formula::imp(fc(), fd()));  // c -> d
  std::size_t s = sb.suffix_with(p1, fc());                         // (b->c) -> (a->c)
  std::size_t pr = sb.prefix_with(p2, fa());                        // (a->c) -> (a->d)
  sb.trans(s, pr);                                                  // (b->c) -> (a->d)
  return sb.take();
}

ProofScript t_contraposition() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p = sb.assume("imp", Formula::imp(fa(), fb()));
  sb.contrapose(p);
  return sb.take();
}

// !(a | b) <-> !a & !b
ProofScript t_demorgan_disjunction() {
  ScriptBuilder sb(Profile::QSLw);
  FormulaPtr a = fa(), b = fb();
  Bindings ob;
  ob["phi"] = Binding::of_formula(a);
  ob["psi"] = Binding::of_formula(b);
  std::size_t i1 = sb.axiom("or-intro-l", ob);  // a -> a|b
  std::size_t c1 = sb.contrapose(i1);           // !(a|b) -> !a
  std::size_t i2 = sb.axiom("or-intro-r", ob);  // b -> a|b
  std::size_t c2 = sb.contrapose(i2);           // !(a|b) -> !b
  std::size_t ltr = sb.and_intro(c1, c2);       // !(a|b) -> !a & !b
  Bindings eb;
  eb["phi"] = Binding::of_formula(a);
  eb["psi"] = Binding::of_formula(b);
  eb["chi"] = Binding::of_formula(Formula::bot());
  std::size_t rtl = sb.axiom("or-elim-ax", eb);  // (!a & !b) -> !(a|b)
  sb.adjoin(ltr, rtl);
  return sb.take();
}

// !a | !b -> !(a & b)
ProofScript t_demorgan_conjunction() {
  ScriptBuilder sb(Profile::QSLw);
  FormulaPtr a = fa(), b = fb();
  Bindings ab;
  ab["phi"] = Binding::of_formula(a);
  ab["psi"] = Binding::of_formula(b);
  std::size_t el = sb.axiom("and-elim-l", ab);  // a&b -> a
  std::size_t cl = sb.contrapose(el);           // !a -> !(a&b)
  std::size_t er = sb.axiom("and-elim-r", ab);  // a&b -> b
  std::size_t cr = sb.contrapose(er);           // !b -> !(a&b)
  sb.or_elim(cl, cr);
  return sb.take();
}

// a -> (b -> a & b)
ProofScript t_conjoining_weakening() {
  ScriptBuilder sb(Profile::QSLw);
  sb.weakening_strong(fa(), fb());
  return sb.take();
}

// !a -> (a -> c)
ProofScript t_absurdity_spread() {
  ScriptBuilder sb(Profile::QSLw);
  sb.red(fa(), fc());
  return sb.take();
}

// From a & b -> c, the curried a -> (b -> c).
ProofScript t_currying() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p = sb.assume("joint", Formula::imp(Formula::conj(fa(), fb()), fc()));
  sb.exp(p);
  return sb.take();
}

// From a | !a and a -> (b -> c), the uncurried a & b -> c.
ProofScript t_crisp_uncurrying() {
  ScriptBuilder sb(Profile::QSLw);
  FormulaPtr a = fa();
  std::size_t cert = sb.assume("crisp", Formula::disj(a, Formula::neg(a)));
  std::size_t imp = sb.assume("curried", Formula::imp(a, Formula::imp(fb(), fc())));
  sb.crisp_import(cert, imp);
  return sb.take();
}

// From a | !a and b | !b, the certificate (a|b) | !(a|b).
ProofScript t_crisp_disjunction() {
  ScriptBuilder sb(Profile::QSLw);
  FormulaPtr a = fa(), b = fb();
  std::size_t ca = sb.assume("left", Formula::disj(a, Formula::neg(a)));
  std::size_t cb = sb.assume("right", Formula::disj(b, Formula::neg(b)));
  sb.crisp_or(ca, cb);
  return sb.take();
}

// --- bridges: the weak profile's rules recovered in the stronger one --------

ProofScript t_bridge_weakening() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p = sb.assume("fact", fa());
  sb.weaken(p, fb());
  return sb.take();
}

ProofScript t_bridge_and_intro() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p1 = sb.assume("first", Formula::imp(fc(), fa()));
  std::size_t p2 = sb.assume("second", Formula::imp(fc(), fb()));
  sb.and_intro(p1, p2);
  return sb.take();
}

ProofScript t_bridge_or_elim() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p1 = sb.assume("first", Formula::imp(fa(), fc()));
  std::size_t p2 = sb.assume("second", Formula::imp(fb(), fc()));
  sb.or_elim(p1, p2);
  return sb.take();
}

ProofScript t_bridge_trans() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p1 = sb.assume("first", Formula::imp(fa(), fb()));
  std::size_t p2 = sb.assume("second", Formula::imp(fb(), fc()));
  sb.trans(p1, p2);
  return sb.take();
}

ProofScript t_bridge_morg() {
  ScriptBuilder sb(Profile::QSLw);
  std::size_t p = sb.assume("split", Formula::disj(Formula::neg(fa()), Formula::neg(fb())));
  sb.morg(p);
  return sb.take();
}

// --- equality under a decidable theory ---------------------------------------

// x = y & A(x, S(0), z) -> A(y, S(0), z), using the equality-decidability
// axiom as the crispness certificate.
ProofScript t_equality_import() {
  ScriptBuilder sb(Profile::QSLw, TheoryKind::Q);
  FormulaPtr phi = rel("A(v, S(0), z)");
  std::size_t cert = sb.theory_step("Q~0");  // x = y | !(x = y)
  Bindings eb;
  eb["s"] = Binding::of_term(Term::var("x"));
  eb["t"] = Binding::of_term(Term::var("y"));
  eb["x"] = Binding::of_var("v");
  eb["phi"] = Binding::of_formula(phi);
  std::size_t imp = sb.axiom("eqprin-formula", eb);  // x=y -> (A(x,1,z) -> A(y,1,z))
  sb.crisp_import(cert, imp);
  return sb.take();
}

// The reverse maneuver: the conjunctive transfer re-curried.
ProofScript t_equality_export() {
  ScriptBuilder sb(Profile::QSLw, TheoryKind::Q);
  FormulaPtr phi = rel("A(v, S(0), z)");
  std::size_t cert = sb.theory_step("Q~0");
  Bindings eb;
  eb["s"] = Binding::of_term(Term::var("x"));
  eb["t"] = Binding::of_term(Term::var("y"));
  eb["x"] = Binding::of_var("v");
  eb["phi"] = Binding::of_formula(phi);
  std::size_t imp = sb.axiom("eqprin-formula", eb);
  std::size_t conj = sb.crisp_import(cert, imp);  // x=y & A(x,1,z) -> A(y,1,z)
  sb.exp(conj);                                   // x=y -> (A(x,1,z) -> A(y,1,z))
  return sb.take();
}

// The order relation respects the successor on both sides, packaged as a
// conjunction of the two implications.
ProofScript t_successor_monotonicity() {
  ScriptBuilder sb(Profile::QSLw, TheoryKind::Q);
  std::size_t fwd = derive_le_succ_intro(sb, Term::var("x"), Term::var("y"));
  std::size_t bwd = derive_le_succ_elim(sb, Term::var("x"), Term::var("y"));
  sb.adjoin(fwd, bwd);
  return sb.take();
}

// Zero-or-successor case analysis: a statement proved at zero and at an
// arbitrary successor holds outright.  Demonstrated on the statement that
// every individual equals something.
ProofScript t_case_split() {
  ScriptBuilder sb(Profile::QSLw, TheoryKind::Q);
  FormulaPtr goal = Formula::exists("v", Formula::atom_eq(Term::var("x"), Term::var("v")));
  std::size_t e0 = sb.axiom("eq-id", {{"t", Binding::of_term(Term::numeral(0))}});
  std::size_t x0 =
      sb.ex_intro(e0, "v", Formula::atom_eq(Term::numeral(0), Term::var("v")), Term::numeral(0));
  TermPtr sy = Term::succ(Term::var("y"));
  std::size_t es = sb.axiom("eq-id", {{"t", Binding::of_term(sy)}});
  std::size_t xs = sb.ex_intro(es, "v", Formula::atom_eq(sy, Term::var("v")), sy);
  derive_case_split(sb, x0, xs, "x", "y", goal);
  return sb.take();
}

std::vector<TemplateEntry> build_all() {
  std::vector<TemplateEntry> out;
  auto add = [&](const std::string& name, const std::string& summary, ProofScript s) {
    check(s);  // every template must pass the kernel before it is published
    out.push_back({name, summary, std::move(s)});
  };
  add("or-associativity", "disjunction reassociates in both directions", t_or_associativity());
  add("adjunction", "two theorems conjoin", t_adjunction());
  add("double-negation", "a theorem yields its double negation", t_double_negation());
  add("equality-transfer", "a proved instance transfers along an equation",
      t_equality_transfer());
  add("generalization", "a free-variable theorem generalizes", t_generalization());
  add("suffixing", "an implication composes on the right", t_suffixing());
  add("prefixing", "an implication composes on the left", t_prefixing());
  add("tone-from-suffix-prefix", "tonicity recovered from suffixing and prefixing",
      t_tone_from_suffix_prefix());
  add("contraposition", "an implication contraposes", t_contraposition());
  add("demorgan-disjunction", "negated disjunction splits into conjoined negations",
      t_demorgan_disjunction());
  add("demorgan-conjunction", "disjoined negations refute a conjunction",
      t_demorgan_conjunction());
  add("conjoining-weakening", "a staged introduction of conjunction",
      t_conjoining_weakening());
  add("absurdity-spread", "a negation turns its formula into an arbitrary implication",
      t_absurdity_spread());
  add("currying", "a conjunctive antecedent curries", t_currying());
  add("crisp-uncurrying", "a crisp antecedent uncurries", t_crisp_uncurrying());
  add("crisp-disjunction", "crisp formulas are closed under disjunction",
      t_crisp_disjunction());
  add("bridge-weakening", "the weakening rule from its axiom form", t_bridge_weakening());
  add("bridge-and-intro", "the conjunction-introduction rule from its axiom form",
      t_bridge_and_intro());
  add("bridge-or-elim", "the case-analysis rule from its axiom form", t_bridge_or_elim());
  add("bridge-trans", "transitivity from tonicity", t_bridge_trans());
  add("bridge-morg", "the de-Morgan rule from its theorem form", t_bridge_morg());
  add("equality-import", "equals import into a conjunctive antecedent", t_equality_import());
  add("equality-export", "the conjunctive transfer re-curried", t_equality_export());
  add("successor-monotonicity", "the order respects the successor on both sides",
      t_successor_monotonicity());
  add("case-split", "zero-or-successor case analysis on a generated statement",
      t_case_split());
  return out;
}

}  // namespace

const std::vector<TemplateEntry>& golden_templates() {
  static const std::vector<TemplateEntry> all = build_all();
  return all;
}

std::size_t write_golden(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::size_t n = 0;
  for (const auto& e : golden_templates()) {
    std::ofstream out(std::filesystem::path(dir) / (e.name + ".prf"));
    out << "# " << e.summary << "\n";
    out << print_script(e.script);
    if (!out) throw std::runtime_error("failed to write golden file " + e.name);
    ++n;
  }
  return n;
}

}  // namespace relic
