#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "relic/script_io.hpp"
#include "relic/semantics.hpp"
#include "relic/synthesis.hpp"

using namespace relic;

namespace {

FormulaPtr rel(const std::string& s) { return parse_formula(s, ParseMode::Relational); }
TermPtr N(std::uint64_t n) { return Term::numeral(n); }

// Kernel-checks a produced script and validates the judgment wrapper.
Judgment checked(const ProofScript& s) {
  Judgment j = check(s);
  CHECK(j.profile == Profile::QL0);
  CHECK(j.theory == TheoryKind::R);
  CHECK(j.assumptions.empty());
  return j;
}

std::string refusal(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const RefuseError& e) {
    return e.reason;
  }
  return "(no refusal)";
}

// Random closed formulas in the fragment the sentence provers handle:
// atoms, negation, conjunction, disjunction, bounded quantifiers.
struct BoundedGen {
  std::mt19937_64 rng;
  explicit BoundedGen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }

  TermPtr term(const std::vector<std::string>& scope) {
    if (!scope.empty() && pick(2) == 0)
      return Term::var(scope[pick(scope.size())]);
    return N(pick(4));
  }

  FormulaPtr atom(const std::vector<std::string>& scope) {
    switch (pick(4)) {
      case 0: return Formula::atom_eq(term(scope), term(scope));
      case 1: return Formula::atom_le(term(scope), term(scope));
      case 2: return Formula::atom_add(term(scope), term(scope), term(scope));
      default: return Formula::atom_mul(term(scope), term(scope), term(scope));
    }
  }

  FormulaPtr gen(int depth, std::vector<std::string> scope, int binders_left) {
    if (depth == 0) return atom(scope);
    switch (pick(binders_left > 0 ? 6 : 4)) {
      case 0: return atom(scope);
      case 1: return Formula::neg(gen(depth - 1, scope, binders_left));
      case 2:
        return Formula::conj(gen(depth - 1, scope, binders_left),
                             gen(depth - 1, scope, binders_left));
      case 3:
        return Formula::disj(gen(depth - 1, scope, binders_left),
                             gen(depth - 1, scope, binders_left));
      default: {
        static const char* pool[] = {"y", "z", "w"};
        std::string v = pool[scope.size() % 3];
        bool already = false;
        for (const auto& s : scope) already = already || s == v;
        if (already) return atom(scope);
        TermPtr bound = scope.empty() || pick(2) == 0
                            ? N(1 + pick(3))
                            : Term::var(scope[pick(scope.size())]);
        std::vector<std::string> inner = scope;
        inner.push_back(v);
        FormulaPtr body = gen(depth - 1, inner, binders_left - 1);
        return pick(2) == 0 ? Formula::bforall(v, bound, body)
                            : Formula::bexists(v, bound, body);
      }
    }
  }
};

}  // namespace

TEST_CASE("prover: true bounded sentences from the worked set") {
  for (const char* text : {
           "A(S(0), S(0), S(S(0)))",
           "S(0) <= S(S(0))",
           "All y <= S(0) . y <= S(0)",
       }) {
    CAPTURE(text);
    FormulaPtr f = rel(text);
    ProofScript s = prove_true_delta0(f);
    CHECK(kernel_equal(checked(s).theorem, f));
  }
}

TEST_CASE("prover: false bounded sentences from the worked set") {
  for (const char* text : {
           "S(0) = S(S(0))",
           "M(S(0), S(0), S(S(0)))",
           "S(S(0)) <= S(0)",
       }) {
    CAPTURE(text);
    FormulaPtr f = rel(text);
    ProofScript s = prove_false_delta0(f);
    CHECK(kernel_equal(checked(s).theorem, Formula::imp(f, Formula::bot())));
  }
}

TEST_CASE("prover: scripts survive a print/parse round trip") {
  FormulaPtr f = rel("All y <= S(S(0)) . (Ex z <= y . z = y)");
  ProofScript s = prove_true_delta0(f);
  ProofScript back = parse_script(print_script(s));
  CHECK(kernel_equal(checked(back).theorem, f));
}

TEST_CASE("prover: existential sentences with small witnesses") {
  FormulaPtr f = rel("Ex v . A(v, S(0), S(S(S(0))))");
  ProofScript s = prove_sigma1(f, 20);
  CHECK(kernel_equal(checked(s).theorem, f));
  // The least witness, 2, is what gets introduced.
  CHECK(print_script(s).find("A(S(S(0)), S(0), S(S(S(0))))") != std::string::npos);

  FormulaPtr g = rel("Ex v . v = v");
  CHECK(kernel_equal(checked(prove_sigma1(g, 0)).theorem, g));
}

TEST_CASE("prover: refusals carry stable reasons") {
  CHECK(refusal([] { prove_true_delta0(rel("x = 0")); }) == "not-a-sentence");
  CHECK(refusal([] { prove_true_delta0(rel("Ex v . v = 0")); }) == "not-delta0");
  CHECK(refusal([] { prove_true_delta0(rel("0 = S(0)")); }) == "evaluates-false");
  CHECK(refusal([] { prove_false_delta0(rel("0 = 0")); }) == "evaluates-true");
  CHECK(refusal([] { prove_false_delta0(rel("Ex v . v = 0")); }) == "not-delta0");
  CHECK(refusal([] { prove_sigma1(rel("0 = 0"), 5); }) == "not-sigma1");
  CHECK(refusal([] { prove_sigma1(rel("Ex v . v = S(S(S(0)))"), 2); }) ==
        "witness-exhausted");
  // True, but the fragment stops at negation-normal connectives.
  CHECK(refusal([] { prove_true_delta0(rel("0 = 0 -> 0 = 0")); }) ==
        "unsupported-connective");
  // Classical vocabulary is not the kernel's language.
  CHECK(refusal([] {
          prove_true_delta0(Formula::atom_eq(
              Term::plus(Term::zero(), Term::zero()), Term::zero()));
        }) == "not-relational");
  // Values beyond the synthesis scale cap are refused up front.
  CHECK(refusal([] {
          prove_true_delta0(Formula::atom_eq(N(10001), N(10001)));
        }) == "numeral-too-large");
}

TEST_CASE("prover: exactly one of the two provers accepts each closed sentence") {
  BoundedGen g(0xd0c5eedULL);
  int trues = 0, falses = 0;
  std::size_t max_steps = 0;
  for (int trial = 0; trial < 300; ++trial) {
    FormulaPtr f = g.gen(1 + static_cast<int>(g.pick(4)), {}, 2);
    CAPTURE(trial);
    CAPTURE(to_string(f));
    REQUIRE(classify(f) == FormulaClass::Delta0);
    bool truth = eval_delta0(f, {});
    ProofScript s;
    if (truth) {
      ++trues;
      s = prove_true_delta0(f);
      CHECK(refusal([&] { prove_false_delta0(f); }) == "evaluates-true");
      CHECK(kernel_equal(checked(s).theorem, f));
    } else {
      ++falses;
      s = prove_false_delta0(f);
      CHECK(refusal([&] { prove_true_delta0(f); }) == "evaluates-false");
      CHECK(kernel_equal(checked(s).theorem, Formula::imp(f, Formula::bot())));
    }
    // Soundness round trip: the checked theorem is never refuted by the
    // evaluator, and the script survives serialization.
    Judgment j = check(s);
    CHECK(never_refuted(j.theorem, 4, 8));
    max_steps = std::max(max_steps, s.steps.size());
  }
  // Both branches genuinely exercised, and scripts stay desk-scale.
  CHECK(trues > 50);
  CHECK(falses > 50);
  CHECK(max_steps < 20000);
}

TEST_CASE("prover: random true existential sentences are all provable") {
  BoundedGen g(0x51617BULL);
  int proved = 0, attempts = 0;
  while (proved < 100 && attempts < 5000) {
    ++attempts;
    FormulaPtr body = g.gen(1 + static_cast<int>(g.pick(3)), {"v"}, 2);
    FormulaPtr f = Formula::exists("v", body);
    if (classify(f) != FormulaClass::Sigma1) continue;
    EvalResult r = eval(f, {}, 20);
    if (!r.truthy()) {
      CHECK(refusal([&] { prove_sigma1(f, 20); }) == "witness-exhausted");
      continue;
    }
    ProofScript s = prove_sigma1(f, 20);
    CHECK(kernel_equal(checked(s).theorem, f));
    ++proved;
  }
  CHECK(proved == 100);
}

TEST_CASE("separator: the worked pair of finite sets") {
  SeparatorSpec spec{rel("(x = 0 | x = S(S(0))) & v = 0"),
                     rel("x = S(0) & v = 0")};
  SeparatorFormula sf = build_separator(spec);
  CHECK(classify(sf.phi) == FormulaClass::Sigma1);
  CHECK(free_vars(sf.phi) == std::set<std::string>{"x"});
  CHECK(free_vars(sf.psi) == std::set<std::string>({"x", "v"}));

  // The separating formula tracks membership on a decade sweep: true exactly
  // on the positive set, false elsewhere (including the negative set).
  for (std::uint64_t n = 0; n <= 9; ++n) {
    CAPTURE(n);
    EvalResult r = eval(substitute(sf.phi, "x", N(n)), {}, 9);
    CHECK(r.truthy() == (n == 0 || n == 2));
  }

  ProofScript pos = prove_separator(spec, 2, SeparatorSide::Pos, 9);
  CHECK(kernel_equal(checked(pos).theorem, substitute(sf.phi, "x", N(2))));

  ProofScript neg = prove_separator(spec, 1, SeparatorSide::Neg, 9);
  CHECK(kernel_equal(checked(neg).theorem,
                     Formula::imp(substitute(sf.phi, "x", N(1)), Formula::bot())));

  // Membership is oracle-checked: 5 is in neither set, and the sides are not
  // interchangeable.
  CHECK(refusal([&] { prove_separator(spec, 5, SeparatorSide::Pos, 9); }) ==
        "not-in-set");
  CHECK(refusal([&] { prove_separator(spec, 5, SeparatorSide::Neg, 9); }) ==
        "not-in-set");
  CHECK(refusal([&] { prove_separator(spec, 2, SeparatorSide::Neg, 9); }) ==
        "not-in-set");
  CHECK(refusal([&] { prove_separator(spec, 1, SeparatorSide::Pos, 9); }) ==
        "not-in-set");
}

TEST_CASE("separator: degenerate and malformed specs") {
  // Both sets empty: the formula builds fine, every membership claim refuses.
  SeparatorSpec vac{Formula::bot(), Formula::bot()};
  SeparatorFormula sf = build_separator(vac);
  CHECK(classify(sf.phi) == FormulaClass::Sigma1);
  CHECK(refusal([&] { prove_separator(vac, 0, SeparatorSide::Pos, 5); }) ==
        "not-in-set");

  // Free variables outside {x, v} are rejected.
  CHECK(refusal([] {
          build_separator({rel("y = 0"), rel("x = 0 & v = 0")});
        }) == "bad-free-variables");
  // Unbounded quantifiers are rejected.
  CHECK(refusal([] {
          build_separator({rel("Ex y . x = y"), rel("x = 0")});
        }) == "not-delta0");
}

TEST_CASE("separator: overlapping sets abort every call") {
  // A = {0} (witness v=0), B = {0} (witness v=1): not disjoint.
  SeparatorSpec ix{rel("x = 0 & v = 0"), rel("x = 0 & v = S(0)")};
  CHECK(build_separator(ix).phi != nullptr);  // shape alone is fine
  for (SeparatorSide side : {SeparatorSide::Pos, SeparatorSide::Neg}) {
    CHECK(refusal([&] { prove_separator(ix, 0, side, 5); }) ==
          "separator-sets-intersect");
    // ... even at a number that is in neither set: the guard is global.
    CHECK(refusal([&] { prove_separator(ix, 3, side, 5); }) ==
          "separator-sets-intersect");
  }
}

TEST_CASE("separator: witness binder renames around a clashing name") {
  // beta already binds u, so the separator's bounded witness picks a fresh
  // name rather than capturing.
  SeparatorSpec spec{rel("x = 0 & v = 0"),
                     rel("x = S(0) & (Ex u <= v . u = u)")};
  SeparatorFormula sf = build_separator(spec);
  FormulaPtr ex_part = sf.psi->l->r;
  CHECK(ex_part->tag == FormulaTag::BExists);
  CHECK(ex_part->var != "u");

  ProofScript neg = prove_separator(spec, 1, SeparatorSide::Neg, 5);
  CHECK(kernel_equal(checked(neg).theorem,
                     Formula::imp(substitute(sf.phi, "x", N(1)), Formula::bot())));
  ProofScript pos = prove_separator(spec, 0, SeparatorSide::Pos, 5);
  CHECK(kernel_equal(checked(pos).theorem, substitute(sf.phi, "x", N(0))));
}

TEST_CASE("separator: randomized finite set specs round-trip both sides") {
  BoundedGen g(0x5e9a7a7eULL);
  int done = 0, attempts = 0;
  while (done < 25 && attempts < 4000) {
    ++attempts;
    FormulaPtr alpha = g.gen(2, {"x", "v"}, 1);
    FormulaPtr beta = g.gen(2, {"x", "v"}, 1);
    auto members = [&](const FormulaPtr& f) {
      std::set<std::uint64_t> out;
      for (std::uint64_t k = 0; k <= 6; ++k)
        for (std::uint64_t w = 0; w <= 6; ++w)
          if (eval_delta0(f, {{"x", k}, {"v", w}})) {
            out.insert(k);
            break;
          }
      return out;
    };
    std::set<std::uint64_t> A = members(alpha), B = members(beta);
    bool disjoint = true;
    for (std::uint64_t k : A) disjoint = disjoint && !B.count(k);
    if (!disjoint || A.empty() || B.empty()) continue;

    SeparatorSpec spec{alpha, beta};
    SeparatorFormula sf = build_separator(spec);
    std::uint64_t a = *A.begin(), b = *B.begin();
    CAPTURE(to_string(alpha));
    CAPTURE(to_string(beta));
    ProofScript ps = prove_separator(spec, a, SeparatorSide::Pos, 6);
    CHECK(kernel_equal(checked(ps).theorem, substitute(sf.phi, "x", N(a))));
    ProofScript ns = prove_separator(spec, b, SeparatorSide::Neg, 6);
    CHECK(kernel_equal(checked(ns).theorem,
                       Formula::imp(substitute(sf.phi, "x", N(b)), Formula::bot())));
    ++done;
  }
  CHECK(done == 25);
}
