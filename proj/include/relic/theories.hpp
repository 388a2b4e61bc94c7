#pragma once
// The two arithmetic theories.
//
// R~ axiomatizes the finite facts of relational arithmetic, one axiom family
// per numeral pair (m, n abbreviate the numerals S^m(0), S^n(0)):
//
//   R~1(m,n)        A(m,n,x) <-> m+n = x
//   R~2(m,n)        M(m,n,x) <-> m*n = x
//   R~3(m,n), m!=n  m = n -> bot
//   R~4(n)          x <= n <-> (x = 0 | ... | x = n)
//   R~5(n)          x <= n | n <= x
//   R~6(n)          x <= n | !(x <= n)
//
// Q~ is the finitely axiomatized recursion theory:
//
//   Q~0         x = y | !(x = y)
//   Q~1         S(x) = 0 -> bot
//   Q~2         S(x) = S(y) -> x = y
//   Q~3         !(x = 0) -> Ex y . x = S(y)
//   Q~4         A(x,0,y) <-> x = y
//   Q~5         A(x,S(y),z) <-> Ex u . A(x,y,u) & z = S(u)
//   Q~6         M(x,0,y) <-> y = 0
//   Q~7a        M(x,S(y),z) -> Ex u . M(x,y,u) & A(u,x,z)
//   Q~7b(m,n)   M(m,n,u) -> (A(u,m,x) -> M(m,n+1,x))
//   Q~8         x <= y <-> Ex z . A(z,x,y)
//
// Axioms are emitted with the free variables shown; scripts instantiate them
// by explicit generalization and universal instantiation.

#include <cstdint>
#include <string>
#include <vector>

#include "relic/kernel.hpp"
#include "relic/syntax.hpp"

namespace relic {

// Largest admissible numeral parameter in a theory axiom instance.
constexpr std::uint64_t kTheoryParamCap = 1000000;

// All axiom names of a theory, in presentation order.
const std::vector<std::string>& theory_axiom_names(TheoryKind theory);

// Number of numeral parameters the named axiom takes (0, 1 or 2).
// Throws CheckError for names not in the theory.
std::size_t theory_axiom_arity(TheoryKind theory, const std::string& name);

// The axiom instance. Validates the parameter count, the parameter cap
// (1000000) and side constraints (R~3 needs m != n). Throws CheckError.
FormulaPtr theory_axiom(TheoryKind theory, const std::string& name,
                        const std::vector<std::uint64_t>& params);

// Canonical free variables of the emitted axiom, in the order a script
// should instantiate them (e.g. Q~5 -> {x, y, z}).
std::vector<std::string> theory_axiom_vars(TheoryKind theory, const std::string& name);

}  // namespace relic
