#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "relic/semantics.hpp"
#include "relic/syntax.hpp"

using namespace relic;

namespace {

FormulaPtr rel(const std::string& s) { return parse_formula(s, ParseMode::Relational); }
FormulaPtr cls(const std::string& s) { return parse_formula(s, ParseMode::Classical); }

// Independent reference evaluator, deliberately written from scratch against
// the intended reading of the connectives (material implication, bounded
// quantifiers enumerating 0..bound inclusive).  Only total on formulas whose
// quantifiers are all bounded.
std::int64_t ref_term(const TermPtr& t, const std::map<std::string, std::uint64_t>& env) {
  if (t->tag == TermTag::Var) return static_cast<std::int64_t>(env.at(t->name));
  if (t->tag == TermTag::Zero) return 0;
  if (t->tag == TermTag::Succ) return ref_term(t->a, env) + 1;
  if (t->tag == TermTag::Plus) return ref_term(t->a, env) + ref_term(t->b, env);
  return ref_term(t->a, env) * ref_term(t->b, env);
}

bool ref_eval(const FormulaPtr& f, std::map<std::string, std::uint64_t> env) {
  switch (f->tag) {
    case FormulaTag::Atom: {
      std::vector<std::int64_t> v;
      for (const auto& t : f->args) v.push_back(ref_term(t, env));
      if (f->atom == AtomTag::Eq) return v[0] == v[1];
      if (f->atom == AtomTag::Le) return v[0] <= v[1];
      if (f->atom == AtomTag::A) return v[0] + v[1] == v[2];
      return v[0] * v[1] == v[2];
    }
    case FormulaTag::Bot: return false;
    case FormulaTag::And: return ref_eval(f->l, env) && ref_eval(f->r, env);
    case FormulaTag::Or: return ref_eval(f->l, env) || ref_eval(f->r, env);
    case FormulaTag::Imp: return !ref_eval(f->l, env) || ref_eval(f->r, env);
    case FormulaTag::BForall: {
      std::int64_t b = ref_term(f->bound, env);
      for (std::int64_t w = 0; w <= b; ++w) {
        env[f->var] = static_cast<std::uint64_t>(w);
        if (!ref_eval(f->l, env)) return false;
      }
      return true;
    }
    case FormulaTag::BExists: {
      std::int64_t b = ref_term(f->bound, env);
      for (std::int64_t w = 0; w <= b; ++w) {
        env[f->var] = static_cast<std::uint64_t>(w);
        if (ref_eval(f->l, env)) return true;
      }
      return false;
    }
    default: throw std::runtime_error("reference evaluator: unbounded quantifier");
  }
}

}  // namespace

TEST_CASE("term evaluation") {
  Assignment env{{"x", 3}, {"y", 4}};
  CHECK(eval_term(parse_term("S(S(0))", ParseMode::Relational), {}) == 2);
  CHECK(eval_term(parse_term("x + y * y", ParseMode::Classical), env) == 19);
  CHECK(eval_term(parse_term("(x + y) * y", ParseMode::Classical), env) == 28);
  CHECK_THROWS_AS(eval_term(parse_term("z", ParseMode::Relational), env), EvalError);
}

TEST_CASE("atoms and connectives") {
  Assignment env{{"x", 2}, {"y", 3}, {"z", 5}};
  CHECK(eval_delta0(rel("A(x, y, z)"), env));
  CHECK(!eval_delta0(rel("M(x, y, z)"), env));
  CHECK(eval_delta0(rel("M(x, y, z) -> bot"), env));
  CHECK(eval_delta0(rel("x <= y"), env));
  CHECK(!eval_delta0(rel("y <= x"), env));
  CHECK(eval_delta0(rel("x = y | x <= y"), env));
  CHECK(!eval_delta0(rel("bot"), env));
  // Material implication with a false antecedent.
  CHECK(eval_delta0(rel("y <= x -> bot"), env));
}

TEST_CASE("bounded quantifiers enumerate 0..bound inclusive") {
  CHECK(eval_delta0(rel("Ex x <= S(S(0)) . x = S(S(0))"), {}));
  CHECK(eval_delta0(rel("All x <= S(S(0)) . x <= S(S(0))"), {}));
  CHECK(!eval_delta0(rel("Ex x <= S(S(0)) . x = S(S(S(0)))"), {}));
  // Bound evaluated under the enclosing assignment.
  Assignment env{{"y", 4}};
  CHECK(eval_delta0(rel("Ex x <= y . x = S(S(S(S(0))))"), env));
  CHECK(!eval_delta0(rel("Ex x <= y . x = S(S(S(S(S(0)))))"), env));
}

TEST_CASE("public eval: Delta0, Sigma1 and refusals") {
  EvalResult r = eval(rel("Ex w . A(S(S(0)), S(0), w)"), {}, 100);
  CHECK(r.kind == EvalResult::Kind::TrueWithWitness);
  CHECK(r.value == 3);

  r = eval(rel("Ex w . M(w, w, S(S(S(0))))"), {}, 100);
  CHECK(r.kind == EvalResult::Kind::FalseUpToBound);
  CHECK(r.value == 100);

  r = eval(rel("All x <= S(0) . x <= S(0)"), {}, 100);
  CHECK(r.kind == EvalResult::Kind::True);

  CHECK_THROWS_AS(eval(rel("All x . x = x"), {}, 100), EvalUnsupported);
  CHECK_THROWS_AS(eval(rel("Ex x . Ex y . A(x, y, x)"), {}, 100), EvalUnsupported);
  CHECK_THROWS_AS(eval_delta0(rel("Ex x . x = 0"), {}), EvalUnsupported);
}

TEST_CASE("trivalent evaluation is conservative about unbounded quantifiers") {
  CHECK(eval_trivalent(rel("All x . x = x"), {}, 16) == Tri::Unknown);
  CHECK(eval_trivalent(rel("All x . x = 0"), {}, 16) == Tri::False);
  CHECK(eval_trivalent(rel("Ex x . x = S(S(0))"), {}, 16) == Tri::True);
  CHECK(eval_trivalent(rel("Ex x . S(x) = 0"), {}, 16) == Tri::Unknown);
  CHECK(eval_trivalent(rel("x = x & bot"), {{"x", 1}}, 16) == Tri::False);
  // A true implication whose antecedent is unknowable stays unknown...
  CHECK(eval_trivalent(rel("(Ex x . S(x) = 0) -> bot"), {}, 16) == Tri::Unknown);
  // ...but a refutable conjunct makes the whole thing false.
  CHECK(eval_trivalent(rel("(Ex x . x = x) & bot"), {}, 16) == Tri::False);
  // Bounded quantifiers stay exact.
  CHECK(eval_trivalent(rel("All x <= S(0) . x <= S(0)"), {}, 16) == Tri::True);
}

TEST_CASE("soundness sweep helper") {
  CHECK(never_refuted(rel("A(x, y, z) -> A(x, y, z)"), 4, 8));
  CHECK(never_refuted(rel("x <= y | y <= x"), 4, 8));
  CHECK(!never_refuted(rel("x <= y"), 4, 8));
  CHECK(never_refuted(rel("Ex u . A(x, y, u)"), 4, 16));
}

TEST_CASE("delta0 equivalence oracle") {
  // x <= y  iff  some z with z + x = y.
  CHECK(delta0_equivalent(cls("x <= y"), rel("Ex z <= y . A(z, x, y)"), 6));
  CHECK(!delta0_equivalent(cls("x <= y"), rel("Ex z <= y . A(z, y, x)"), 6));
  // A classical atom against its relational rendering.
  CHECK(delta0_equivalent(cls("x + y = z"), rel("A(x, y, z)"), 6));
  CHECK(delta0_equivalent(cls("x * y = z"), rel("M(x, y, z)"), 6));
  CHECK(!delta0_equivalent(cls("x * y = z"), rel("A(x, y, z)"), 6));
}

TEST_CASE("evaluator agrees with an independent reference on random formulas") {
  // Random Delta0 formulas out of a small grammar, checked on all assignments.
  std::mt19937_64 rng(20260819);
  const std::vector<std::string> atoms = {
      "x = y", "x <= y", "A(x, y, x)", "M(x, y, y)", "x = 0", "y <= S(S(0))", "bot"};
  auto pick_atom = [&]() { return atoms[rng() % atoms.size()]; };
  for (int i = 0; i < 200; ++i) {
    std::string s;
    switch (rng() % 6) {
      case 0: s = pick_atom(); break;
      case 1: s = "(" + pick_atom() + ") & (" + pick_atom() + ")"; break;
      case 2: s = "(" + pick_atom() + ") | (" + pick_atom() + ")"; break;
      case 3: s = "(" + pick_atom() + ") -> (" + pick_atom() + ")"; break;
      case 4: s = "All x <= S(S(S(0))) . (" + pick_atom() + ")"; break;
      default: s = "Ex y <= S(S(0)) . (" + pick_atom() + ")"; break;
    }
    FormulaPtr f = rel(s);
    CAPTURE(s);
    bool ok = for_each_assignment(f, 3, [&](const Assignment& env) {
      return eval_delta0(f, env) == ref_eval(f, env);
    });
    CHECK(ok);
  }
}
