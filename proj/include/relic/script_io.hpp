#pragma once
// Text format for proof scripts (.prf):
//
//   # comment lines and blank lines are allowed anywhere
//   profile: QL0                        (or QSLw; required, first)
//   theory: R~                          (or Q~; optional)
//   assume h1 :: <formula>              (0 or more)
//   step 1 axiom identity [phi="x = x"] :: x = x -> x = x
//   step 2 theory R~5(2) :: x <= S(S(0)) | S(S(0)) <= x
//   step 3 theory h1 :: <the assumed formula>
//   step 4 rule mp from 1, 2 [psi="..."] :: <formula>
//
// Steps are numbered 1..n in order; rule premises must reference earlier
// steps.  Binding values are double-quoted and parse in the relational
// grammar; their sorts (term / formula / variable) come from the schema
// table.  Formulas in binding values and conclusions use the relational
// grammar only.
//
// Grammar violations (including forward or self premise references and
// binding keys unknown to a known schema) raise ScriptFormatError; semantic
// problems are left to the checker.

#include <string>

#include "relic/kernel.hpp"

namespace relic {

struct ScriptFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProofScript parse_script(const std::string& text);
std::string print_script(const ProofScript& script);

}  // namespace relic
