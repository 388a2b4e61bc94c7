#include "doctest.h"
#include "relic/semantics.hpp"
#include "relic/theories.hpp"

using namespace relic;

namespace {

FormulaPtr rel(const std::string& s) { return parse_formula(s, ParseMode::Relational); }

}  // namespace

TEST_CASE("axiom catalogs") {
  auto r = theory_axiom_names(TheoryKind::R);
  CHECK(r == std::vector<std::string>{"R~1", "R~2", "R~3", "R~4", "R~5", "R~6"});
  auto q = theory_axiom_names(TheoryKind::Q);
  CHECK(q == std::vector<std::string>{"Q~0", "Q~1", "Q~2", "Q~3", "Q~4", "Q~5", "Q~6", "Q~7a",
                                      "Q~7b", "Q~8"});
  CHECK(theory_axiom_arity(TheoryKind::R, "R~1") == 2);
  CHECK(theory_axiom_arity(TheoryKind::R, "R~4") == 1);
  CHECK(theory_axiom_arity(TheoryKind::Q, "Q~0") == 0);
  CHECK(theory_axiom_arity(TheoryKind::Q, "Q~7b") == 2);
}

TEST_CASE("finitary axiom shapes") {
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~1", {2, 1}),
                     rel("(A(S(S(0)), S(0), x) -> S(S(S(0))) = x)"
                         " & (S(S(S(0))) = x -> A(S(S(0)), S(0), x))")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~2", {2, 2}),
                     rel("(M(S(S(0)), S(S(0)), x) -> S(S(S(S(0)))) = x)"
                         " & (S(S(S(S(0)))) = x -> M(S(S(0)), S(S(0)), x))")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~3", {0, 2}),
                     rel("0 = S(S(0)) -> bot")));
  CHECK_THROWS_AS(theory_axiom(TheoryKind::R, "R~3", {3, 3}), CheckError);
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~4", {2}),
                     rel("(x <= S(S(0)) -> x = 0 | x = S(0) | x = S(S(0)))"
                         " & (x = 0 | x = S(0) | x = S(S(0)) -> x <= S(S(0)))")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~4", {0}),
                     rel("(x <= 0 -> x = 0) & (x = 0 -> x <= 0)")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~5", {1}), rel("x <= S(0) | S(0) <= x")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::R, "R~6", {1}), rel("x <= S(0) | !(x <= S(0))")));
}

TEST_CASE("recursion-theory axiom shapes") {
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~0", {}), rel("x = y | !(x = y)")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~1", {}), rel("S(x) = 0 -> bot")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~2", {}), rel("S(x) = S(y) -> x = y")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~3", {}),
                     rel("!(x = 0) -> Ex y . x = S(y)")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~4", {}),
                     rel("(A(x, 0, y) -> x = y) & (x = y -> A(x, 0, y))")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~5", {}),
                     rel("(A(x, S(y), z) -> Ex u . A(x, y, u) & z = S(u))"
                         " & ((Ex u . A(x, y, u) & z = S(u)) -> A(x, S(y), z))")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~6", {}),
                     rel("(M(x, 0, y) -> y = 0) & (y = 0 -> M(x, 0, y))")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~7a", {}),
                     rel("M(x, S(y), z) -> Ex u . M(x, y, u) & A(u, x, z)")));
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~8", {}),
                     rel("(x <= y -> Ex z . A(z, x, y)) & ((Ex z . A(z, x, y)) -> x <= y)")));
}

TEST_CASE("numeral multiplication recursion adds the first factor") {
  // The sound instance: M(m,n,u) and A(u,m,x) give M(m,n+1,x).
  CHECK(kernel_equal(theory_axiom(TheoryKind::Q, "Q~7b", {2, 1}),
                     rel("M(S(S(0)), S(0), u) -> (A(u, S(S(0)), x) -> M(S(S(0)), S(S(0)), x))")));
  // Adding the second factor instead is false: with m=2, n=1 take u=2, x=3.
  FormulaPtr broken = rel("M(S(S(0)), S(0), u) -> (A(u, S(0), x) -> M(S(S(0)), S(S(0)), x))");
  Assignment env{{"u", 2}, {"x", 3}};
  CHECK_FALSE(eval_delta0(broken, env));
  // The emitted form survives an exhaustive sweep.
  FormulaPtr good = theory_axiom(TheoryKind::Q, "Q~7b", {2, 1});
  CHECK(never_refuted(good, 8, 16));
}

TEST_CASE("every finitary axiom instance is true in the standard model") {
  for (uint64_t m = 0; m <= 4; ++m) {
    for (uint64_t n = 0; n <= 4; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(never_refuted(theory_axiom(TheoryKind::R, "R~1", {m, n}), 10, 16));
      CHECK(never_refuted(theory_axiom(TheoryKind::R, "R~2", {m, n}), 6, 20));
      if (m != n) CHECK(never_refuted(theory_axiom(TheoryKind::R, "R~3", {m, n}), 2, 8));
      CHECK(never_refuted(theory_axiom(TheoryKind::Q, "Q~7b", {m, n}), 8, 24));
    }
    CHECK(never_refuted(theory_axiom(TheoryKind::R, "R~4", {m}), 8, 8));
    CHECK(never_refuted(theory_axiom(TheoryKind::R, "R~5", {m}), 8, 8));
    CHECK(never_refuted(theory_axiom(TheoryKind::R, "R~6", {m}), 8, 8));
  }
}

TEST_CASE("every schematic axiom is never refuted on small assignments") {
  for (const auto& name : theory_axiom_names(TheoryKind::Q)) {
    if (theory_axiom_arity(TheoryKind::Q, name) != 0) continue;
    CAPTURE(name);
    CHECK(never_refuted(theory_axiom(TheoryKind::Q, name, {}), 5, 12));
  }
}

TEST_CASE("axiom parameter hygiene") {
  CHECK_THROWS_AS(theory_axiom(TheoryKind::R, "R~1", {1}), CheckError);
  CHECK_THROWS_AS(theory_axiom(TheoryKind::Q, "Q~0", {1}), CheckError);
  CHECK_THROWS_AS(theory_axiom(TheoryKind::R, "R~9", {1}), CheckError);
  CHECK_THROWS_AS(theory_axiom(TheoryKind::Q, "R~1", {1, 1}), CheckError);
  CHECK_THROWS_AS(theory_axiom(TheoryKind::R, "R~1", {1, 2000000}), CheckError);
  CHECK(theory_axiom_vars(TheoryKind::R, "R~1") == std::vector<std::string>{"x"});
  CHECK(theory_axiom_vars(TheoryKind::Q, "Q~5") == std::vector<std::string>{"x", "y", "z"});
  CHECK(theory_axiom_vars(TheoryKind::Q, "Q~7b") == std::vector<std::string>{"u", "x"});
}
