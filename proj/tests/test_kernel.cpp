#include "doctest.h"
#include "relic/kernel.hpp"
#include "relic/script_io.hpp"
#include "relic/semantics.hpp"

using namespace relic;

namespace {

FormulaPtr rel(const std::string& s) { return parse_formula(s, ParseMode::Relational); }

Bindings bf(const std::string& k, const std::string& v) {
  return {{k, Binding::of_formula(rel(v))}};
}

}  // namespace

TEST_CASE("axiom schemas compute the advertised formulas") {
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "identity", bf("phi", "x = 0")),
                     rel("x = 0 -> x = 0")));
  Bindings b;
  b["phi"] = Binding::of_formula(rel("x = 0"));
  b["psi"] = Binding::of_formula(rel("y = 0"));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "and-elim-l", b), rel("x = 0 & y = 0 -> x = 0")));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "and-elim-r", b), rel("x = 0 & y = 0 -> y = 0")));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "or-intro-l", b), rel("x = 0 -> x = 0 | y = 0")));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "or-intro-r", b), rel("y = 0 -> x = 0 | y = 0")));

  b["chi"] = Binding::of_formula(rel("z = 0"));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "and-intro-ax", b),
                     rel("(x = 0 -> y = 0) & (x = 0 -> z = 0) -> (x = 0 -> y = 0 & z = 0)")));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "or-elim-ax", b),
                     rel("(x = 0 -> z = 0) & (y = 0 -> z = 0) -> (x = 0 | y = 0 -> z = 0)")));
  Bindings w;
  w["phi"] = Binding::of_formula(rel("x = 0"));
  w["psi"] = Binding::of_formula(rel("y = 0"));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "weakening-ax", w),
                     rel("x = 0 -> (y = 0 -> x = 0)")));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "bot-elim", bf("phi", "x = 0")),
                     rel("bot -> x = 0")));
}

TEST_CASE("profile gating") {
  // The axiom form of weakening belongs to the stronger profile only...
  CHECK_THROWS_AS(compute_axiom(Profile::QL0, "weakening-ax", bf("phi", "x = 0")), CheckError);
  CHECK_THROWS_AS(compute_axiom(Profile::QL0, "bot-elim", bf("phi", "x = 0")), CheckError);
  // ...and the rule forms of weakening etc. to the weak profile only.
  CHECK(rule_info(Profile::QL0, "weakening") != nullptr);
  CHECK(rule_info(Profile::QSLw, "weakening") == nullptr);
  CHECK(rule_info(Profile::QSLw, "adj") != nullptr);
  CHECK(rule_info(Profile::QL0, "adj") == nullptr);
  CHECK(rule_info(Profile::QL0, "morg") != nullptr);
  CHECK(rule_info(Profile::QSLw, "morg") == nullptr);
  CHECK(axiom_info(Profile::QL0, "identity") != nullptr);
  CHECK(axiom_info(Profile::QSLw, "identity") != nullptr);
  CHECK(axiom_info(Profile::QL0, "nonsense") == nullptr);
}

TEST_CASE("quantifier and equality axioms") {
  Bindings b;
  b["x"] = Binding::of_var("x");
  b["phi"] = Binding::of_formula(rel("x <= y"));
  b["t"] = Binding::of_term(Term::numeral(2));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "forall-inst", b),
                     rel("(All x . x <= y) -> S(S(0)) <= y")));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "exists-intro", b),
                     rel("S(S(0)) <= y -> Ex x . x <= y")));

  Bindings e;
  e["t"] = Binding::of_term(parse_term("S(z)", ParseMode::Relational));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "eq-id", e), rel("S(z) = S(z)")));
  e["s"] = Binding::of_term(Term::var("a"));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "eq-com", e), rel("a = S(z) -> S(z) = a")));
  e["u"] = Binding::of_term(Term::var("b"));
  CHECK(kernel_equal(compute_axiom(Profile::QSLw, "eq-trans", e),
                     rel("a = S(z) -> (S(z) = b -> a = b)")));

  Bindings ep;
  ep["s"] = Binding::of_term(Term::var("a"));
  ep["t"] = Binding::of_term(Term::var("b"));
  ep["x"] = Binding::of_var("x");
  ep["u"] = Binding::of_term(parse_term("S(x)", ParseMode::Relational));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "eqprin-term", ep),
                     rel("a = b -> S(a) = S(b)")));
  Bindings ef;
  ef["s"] = Binding::of_term(Term::var("a"));
  ef["t"] = Binding::of_term(Term::var("b"));
  ef["x"] = Binding::of_var("x");
  ef["phi"] = Binding::of_formula(rel("A(x, x, y)"));
  CHECK(kernel_equal(compute_axiom(Profile::QL0, "eqprin-formula", ef),
                     rel("a = b -> (A(a, a, y) -> A(b, b, y))")));

  // Substituting under a capturing binder is rejected.
  Bindings cap;
  cap["x"] = Binding::of_var("x");
  cap["phi"] = Binding::of_formula(Formula::exists("y", rel("x = S(y)")));
  cap["t"] = Binding::of_term(Term::var("y"));
  CHECK_THROWS_AS(compute_axiom(Profile::QL0, "forall-inst", cap), CheckError);
}

TEST_CASE("binding validation") {
  CHECK_THROWS_AS(compute_axiom(Profile::QL0, "identity", {}), CheckError);
  Bindings extra = bf("phi", "x = 0");
  extra["zap"] = Binding::of_formula(rel("bot"));
  CHECK_THROWS_AS(compute_axiom(Profile::QL0, "identity", extra), CheckError);
  Bindings wrong;
  wrong["phi"] = Binding::of_term(Term::numeral(1));
  CHECK_THROWS_AS(compute_axiom(Profile::QL0, "identity", wrong), CheckError);
}

TEST_CASE("rules compute and validate") {
  std::vector<FormulaPtr> none;
  // mp
  CHECK(kernel_equal(
      compute_rule(Profile::QL0, "mp", {rel("x = 0"), rel("x = 0 -> y = 0")}, {}, none),
      rel("y = 0")));
  CHECK_THROWS_AS(
      compute_rule(Profile::QL0, "mp", {rel("x = 0"), rel("z = 0 -> y = 0")}, {}, none),
      CheckError);
  CHECK_THROWS_AS(compute_rule(Profile::QL0, "mp", {rel("x = 0"), rel("y = 0")}, {}, none),
                  CheckError);
  // weakening / assertion
  CHECK(kernel_equal(
      compute_rule(Profile::QL0, "weakening", {rel("x = 0")}, bf("psi", "y = 0"), none),
      rel("y = 0 -> x = 0")));
  CHECK(kernel_equal(
      compute_rule(Profile::QL0, "assertion", {rel("x = 0")}, bf("psi", "bot"), none),
      rel("(x = 0 -> bot) -> bot")));
  // trans-imp
  CHECK(kernel_equal(compute_rule(Profile::QL0, "trans-imp",
                                  {rel("x = 0 -> y = 0"), rel("y = 0 -> z = 0")}, {}, none),
                     rel("x = 0 -> z = 0")));
  CHECK_THROWS_AS(compute_rule(Profile::QL0, "trans-imp",
                               {rel("x = 0 -> y = 0"), rel("w = 0 -> z = 0")}, {}, none),
                  CheckError);
  // and-intro / or-elim
  CHECK(kernel_equal(compute_rule(Profile::QL0, "and-intro",
                                  {rel("x = 0 -> y = 0"), rel("x = 0 -> z = 0")}, {}, none),
                     rel("x = 0 -> y = 0 & z = 0")));
  CHECK(kernel_equal(compute_rule(Profile::QL0, "or-elim",
                                  {rel("x = 0 -> z = 0"), rel("y = 0 -> z = 0")}, {}, none),
                     rel("x = 0 | y = 0 -> z = 0")));
  // morg
  CHECK(kernel_equal(
      compute_rule(Profile::QL0, "morg", {rel("!(x = 0) | !(y = 0)")}, {}, none),
      rel("!(x = 0 & y = 0)")));
  CHECK_THROWS_AS(compute_rule(Profile::QL0, "morg", {rel("x = 0 | y = 0")}, {}, none),
                  CheckError);
  // adj / tone-imp
  CHECK(kernel_equal(compute_rule(Profile::QSLw, "adj", {rel("x = 0"), rel("y = 0")}, {}, none),
                     rel("x = 0 & y = 0")));
  CHECK(kernel_equal(compute_rule(Profile::QSLw, "tone-imp",
                                  {rel("x = 0 -> y = 0"), rel("z = 0 -> w = 0")}, {}, none),
                     rel("(y = 0 -> z = 0) -> (x = 0 -> w = 0)")));
  // arity
  CHECK_THROWS_AS(compute_rule(Profile::QL0, "mp", {rel("x = 0")}, {}, none), CheckError);
}

TEST_CASE("quantifier rules and side conditions") {
  std::vector<FormulaPtr> none;
  Bindings bx;
  bx["x"] = Binding::of_var("x");
  CHECK(kernel_equal(
      compute_rule(Profile::QL0, "forall-intro", {rel("y = 0 -> x = x")}, bx, none),
      rel("y = 0 -> All x . x = x")));
  // x free in the antecedent: rejected.
  CHECK_THROWS_AS(
      compute_rule(Profile::QL0, "forall-intro", {rel("x = 0 -> x = x")}, bx, none),
      CheckError);
  // x free in an assumption: rejected.
  std::vector<FormulaPtr> assume_x = {rel("x = 0")};
  CHECK_THROWS_AS(
      compute_rule(Profile::QL0, "forall-intro", {rel("y = 0 -> x = x")}, bx, assume_x),
      CheckError);

  CHECK(kernel_equal(
      compute_rule(Profile::QSLw, "exists-elim", {rel("x = 0 -> y = y")}, bx, none),
      rel("(Ex x . x = 0) -> y = y")));
  CHECK_THROWS_AS(
      compute_rule(Profile::QSLw, "exists-elim", {rel("x = 0 -> x = x")}, bx, none),
      CheckError);
  CHECK_THROWS_AS(
      compute_rule(Profile::QSLw, "exists-elim", {rel("x = 0 -> y = y")}, bx, assume_x),
      CheckError);
}

TEST_CASE("checker: a full weak-profile derivation (conjoining two theorems)") {
  const char* text = R"PRF(# conjoin 0=0 and S(0)=S(0)
profile: QL0
step 1 axiom eq-id [t="0"] :: 0 = 0
step 2 axiom eq-id [t="S(0)"] :: S(0) = S(0)
step 3 rule weakening from 2 [psi="0 = 0"] :: 0 = 0 -> S(0) = S(0)
step 4 axiom identity [phi="0 = 0"] :: 0 = 0 -> 0 = 0
step 5 rule and-intro from 4, 3 :: 0 = 0 -> 0 = 0 & S(0) = S(0)
step 6 rule mp from 1, 5 :: 0 = 0 & S(0) = S(0)
)PRF";
  ProofScript s = parse_script(text);
  Judgment j = check(s);
  CHECK(kernel_equal(j.theorem, rel("0 = 0 & S(0) = S(0)")));
  CHECK(j.assumptions.empty());
  CHECK(j.profile == Profile::QL0);

  // Round trip through the printer.
  ProofScript s2 = parse_script(print_script(s));
  Judgment j2 = check(s2);
  CHECK(kernel_equal(j2.theorem, j.theorem));
  CHECK(print_script(s2) == print_script(s));
}

TEST_CASE("checker: stated conclusions are verified, not trusted") {
  const char* text = R"PRF(profile: QL0
step 1 axiom eq-id [t="0"] :: 0 = S(0)
)PRF";
  ProofScript s = parse_script(text);
  CHECK_THROWS_AS(check(s), CheckError);
  try {
    check(s);
  } catch (const CheckError& e) {
    CHECK(e.step == 0);
  }
}

TEST_CASE("checker: sugared conclusions match their expansions") {
  // forall-inst on an expanded bounded formula, stated in sugared form.
  const char* text = R"PRF(profile: QSLw
step 1 axiom forall-inst [x="x", phi="!(x <= S(0)) | x = x", t="0"] :: (All x . !(x <= S(0)) | x = x) -> (!(0 <= S(0)) | 0 = 0)
)PRF";
  ProofScript s = parse_script(text);
  // Restate the antecedent with the bounded quantifier.
  s.steps[0].conclusion = Formula::imp(
      rel("All x <= S(0) . x = x"),
      rel("!(0 <= S(0)) | 0 = 0"));
  CHECK_NOTHROW(check(s));
}

TEST_CASE("checker: assumptions and their discharge by composition") {
  ProofScript outer = parse_script(R"PRF(profile: QL0
assume h :: 0 = 0
step 1 theory h :: 0 = 0
step 2 rule weakening from 1 [psi="S(0) = S(0)"] :: S(0) = S(0) -> 0 = 0
)PRF");
  Judgment j = check(outer);
  CHECK(j.assumptions.size() == 1);
  CHECK(kernel_equal(j.theorem, rel("S(0) = S(0) -> 0 = 0")));

  ProofScript inner = parse_script(R"PRF(profile: QL0
step 1 axiom eq-id [t="0"] :: 0 = 0
)PRF");
  ProofScript glued = compose(outer, "h", inner);
  Judgment jg = check(glued);
  CHECK(jg.assumptions.empty());
  CHECK(kernel_equal(jg.theorem, rel("S(0) = S(0) -> 0 = 0")));

  // Composition rejects non-proofs of the assumption.
  ProofScript wrong = parse_script(R"PRF(profile: QL0
step 1 axiom eq-id [t="S(0)"] :: S(0) = S(0)
)PRF");
  CHECK_THROWS_AS(compose(outer, "h", wrong), CheckError);
  CHECK_THROWS_AS(compose(outer, "nope", inner), CheckError);
}

TEST_CASE("checker: theory steps") {
  ProofScript s = parse_script(R"PRF(profile: QL0
theory: R~
step 1 theory R~5(2) :: x <= S(S(0)) | S(S(0)) <= x
)PRF");
  CHECK_NOTHROW(check(s));

  // Wrong conclusion for the axiom instance.
  ProofScript bad = parse_script(R"PRF(profile: QL0
theory: R~
step 1 theory R~5(2) :: x <= S(S(0)) | S(S(S(0))) <= x
)PRF");
  CHECK_THROWS_AS(check(bad), CheckError);

  // Theory axioms need a declared theory.
  ProofScript none = parse_script(R"PRF(profile: QL0
step 1 theory R~5(2) :: x <= S(S(0)) | S(S(0)) <= x
)PRF");
  CHECK_THROWS_AS(check(none), CheckError);

  // Unknown axiom name, wrong arity, violated side constraint.
  ProofScript unk = parse_script(R"PRF(profile: QL0
theory: R~
step 1 theory R~9(2) :: bot
)PRF");
  CHECK_THROWS_AS(check(unk), CheckError);
  ProofScript arity = parse_script(R"PRF(profile: QL0
theory: R~
step 1 theory R~5(2,3) :: x <= S(S(0)) | S(S(0)) <= x
)PRF");
  CHECK_THROWS_AS(check(arity), CheckError);
  ProofScript eq = parse_script(R"PRF(profile: QL0
theory: R~
step 1 theory R~3(2,2) :: S(S(0)) = S(S(0)) -> bot
)PRF");
  CHECK_THROWS_AS(check(eq), CheckError);

  // R~ axioms are not available under Q~ (and vice versa).
  ProofScript cross = parse_script(R"PRF(profile: QSLw
theory: Q~
step 1 theory R~5(2) :: x <= S(S(0)) | S(S(0)) <= x
)PRF");
  CHECK_THROWS_AS(check(cross), CheckError);
}

TEST_CASE("script format errors") {
  CHECK_THROWS_AS(parse_script(""), ScriptFormatError);
  CHECK_THROWS_AS(parse_script("step 1 axiom eq-id [t=\"0\"] :: 0 = 0\n"), ScriptFormatError);
  CHECK_THROWS_AS(parse_script("profile: QL9\n"), ScriptFormatError);
  CHECK_THROWS_AS(parse_script("profile: QL0\n"), ScriptFormatError);  // no steps
  // Non-consecutive numbering.
  CHECK_THROWS_AS(parse_script("profile: QL0\nstep 2 axiom eq-id [t=\"0\"] :: 0 = 0\n"),
                  ScriptFormatError);
  // Forward and self premise references are malformed, not just invalid.
  CHECK_THROWS_AS(parse_script(R"PRF(profile: QL0
step 1 rule mp from 1, 2 :: bot
)PRF"),
                  ScriptFormatError);
  // Unknown binding key for a known axiom.
  CHECK_THROWS_AS(parse_script(R"PRF(profile: QL0
step 1 axiom eq-id [q="0"] :: 0 = 0
)PRF"),
                  ScriptFormatError);
  // Bad formula text.
  CHECK_THROWS_AS(parse_script(R"PRF(profile: QL0
step 1 axiom eq-id [t="0"] :: 0 = = 0
)PRF"),
                  ScriptFormatError);
  // Bad binding value.
  CHECK_THROWS_AS(parse_script(R"PRF(profile: QL0
step 1 axiom identity [phi="x = "] :: x = x -> x = x
)PRF"),
                  ScriptFormatError);
  // Binding value of the wrong sort (classical term in relational script).
  CHECK_THROWS_AS(parse_script(R"PRF(profile: QL0
step 1 axiom eq-id [t="x + y"] :: x + y = x + y
)PRF"),
                  ScriptFormatError);
  // Assumptions after steps.
  CHECK_THROWS_AS(parse_script(R"PRF(profile: QL0
step 1 axiom eq-id [t="0"] :: 0 = 0
assume h :: 0 = 0
)PRF"),
                  ScriptFormatError);

  // Unknown axiom id parses (bindings scanned, discarded) but fails checking.
  ProofScript s = parse_script(R"PRF(profile: QL0
step 1 axiom no-such [t="0"] :: 0 = 0
)PRF");
  CHECK_THROWS_AS(check(s), CheckError);
}

TEST_CASE("checker rejects non-relational statements") {
  ProofScript s;
  s.profile = Profile::QL0;
  Step st;
  st.kind = StepKind::Axiom;
  st.id = "eq-id";
  st.bindings["t"] = Binding::of_term(parse_term("x + y", ParseMode::Classical));
  st.conclusion = parse_formula("x + y = x + y", ParseMode::Classical);
  s.steps.push_back(st);
  CHECK_THROWS_AS(check(s), CheckError);
}
