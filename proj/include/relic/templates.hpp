#pragma once

// A catalog of named, self-contained derivations exercising the two proof
// profiles: structural moves (associativity, adjunction, double negation),
// the derived rules that bridge the weak profile's rules to the stronger
// profile's axioms, contraposition and the de-Morgan laws, the crispness
// lemmas (importing a crisp antecedent into a conjunction, closure of crisp
// formulas under disjunction), and equality transfer.
//
// Each entry builds a complete proof script whose conclusion is stated in
// `theorem`.  The scripts serve as golden files for the checker: they are
// written out in the script text format, re-parsed, and re-checked.

#include <string>
#include <vector>

#include "relic/kernel.hpp"

namespace relic {

struct TemplateEntry {
  std::string name;     // file-name-friendly identifier
  std::string summary;  // one-line description
  ProofScript script;
};

// Builds the whole catalog (deterministic order and content).
const std::vector<TemplateEntry>& golden_templates();

// Writes each template as <dir>/<name>.prf in the script text format.
// Returns the number of files written.
std::size_t write_golden(const std::string& dir);

}  // namespace relic
