#include "relic/theories.hpp"

namespace relic {

namespace {

constexpr std::uint64_t kParamCap = kTheoryParamCap;

TermPtr num(std::uint64_t n) { return Term::numeral(n); }
TermPtr v(const char* n) { return Term::var(n); }

FormulaPtr r_axiom(const std::string& name, const std::vector<std::uint64_t>& p) {
  if (name == "R~1") {
    // A(m,n,x) <-> m+n = x
    return Formula::iff(Formula::atom_add(num(p[0]), num(p[1]), v("x")),
                        Formula::atom_eq(num(p[0] + p[1]), v("x")));
  }
  if (name == "R~2") {
    return Formula::iff(Formula::atom_mul(num(p[0]), num(p[1]), v("x")),
                        Formula::atom_eq(num(p[0] * p[1]), v("x")));
  }
  if (name == "R~3") {
    if (p[0] == p[1])
      throw CheckError("R~3 requires two distinct numerals, got (" + std::to_string(p[0]) +
                       "," + std::to_string(p[1]) + ")");
    return Formula::imp(Formula::atom_eq(num(p[0]), num(p[1])), Formula::bot());
  }
  if (name == "R~4") {
    FormulaPtr cases = Formula::atom_eq(v("x"), num(0));
    for (std::uint64_t k = 1; k <= p[0]; ++k)
      cases = Formula::disj(cases, Formula::atom_eq(v("x"), num(k)));
    return Formula::iff(Formula::atom_le(v("x"), num(p[0])), cases);
  }
  if (name == "R~5") {
    return Formula::disj(Formula::atom_le(v("x"), num(p[0])),
                         Formula::atom_le(num(p[0]), v("x")));
  }
  // R~6
  return Formula::disj(Formula::atom_le(v("x"), num(p[0])),
                       Formula::neg(Formula::atom_le(v("x"), num(p[0]))));
}

FormulaPtr q_axiom(const std::string& name, const std::vector<std::uint64_t>& p) {
  if (name == "Q~0") {
    return Formula::disj(Formula::atom_eq(v("x"), v("y")),
                         Formula::neg(Formula::atom_eq(v("x"), v("y"))));
  }
  if (name == "Q~1")
    return Formula::imp(Formula::atom_eq(Term::succ(v("x")), num(0)), Formula::bot());
  if (name == "Q~2") {
    return Formula::imp(Formula::atom_eq(Term::succ(v("x")), Term::succ(v("y"))),
                        Formula::atom_eq(v("x"), v("y")));
  }
  if (name == "Q~3") {
    return Formula::imp(Formula::neg(Formula::atom_eq(v("x"), num(0))),
                        Formula::exists("y", Formula::atom_eq(v("x"), Term::succ(v("y")))));
  }
  if (name == "Q~4") {
    return Formula::iff(Formula::atom_add(v("x"), num(0), v("y")),
                        Formula::atom_eq(v("x"), v("y")));
  }
  if (name == "Q~5") {
    // A(x,S(y),z) <-> Ex u . A(x,y,u) & z = S(u)
    FormulaPtr rhs = Formula::exists(
        "u", Formula::conj(Formula::atom_add(v("x"), v("y"), v("u")),
                           Formula::atom_eq(v("z"), Term::succ(v("u")))));
    return Formula::iff(Formula::atom_add(v("x"), Term::succ(v("y")), v("z")), rhs);
  }
  if (name == "Q~6") {
    return Formula::iff(Formula::atom_mul(v("x"), num(0), v("y")),
                        Formula::atom_eq(v("y"), num(0)));
  }
  if (name == "Q~7a") {
    // M(x,S(y),z) -> Ex u . M(x,y,u) & A(u,x,z)
    FormulaPtr rhs = Formula::exists(
        "u", Formula::conj(Formula::atom_mul(v("x"), v("y"), v("u")),
                           Formula::atom_add(v("u"), v("x"), v("z"))));
    return Formula::imp(Formula::atom_mul(v("x"), Term::succ(v("y")), v("z")), rhs);
  }
  if (name == "Q~7b") {
    // M(m,n,u) -> (A(u,m,x) -> M(m,n+1,x))
    return Formula::imp(
        Formula::atom_mul(num(p[0]), num(p[1]), v("u")),
        Formula::imp(Formula::atom_add(v("u"), num(p[0]), v("x")),
                     Formula::atom_mul(num(p[0]), num(p[1] + 1), v("x"))));
  }
  // Q~8: x <= y <-> Ex z . A(z,x,y)
  return Formula::iff(Formula::atom_le(v("x"), v("y")),
                      Formula::exists("z", Formula::atom_add(v("z"), v("x"), v("y"))));
}

struct TheoryEntry {
  std::size_t arity;
  std::vector<std::string> vars;
};

const std::map<std::string, TheoryEntry>& r_table() {
  static const std::map<std::string, TheoryEntry> t = {
      {"R~1", {2, {"x"}}}, {"R~2", {2, {"x"}}}, {"R~3", {2, {}}},
      {"R~4", {1, {"x"}}}, {"R~5", {1, {"x"}}}, {"R~6", {1, {"x"}}},
  };
  return t;
}

const std::map<std::string, TheoryEntry>& q_table() {
  static const std::map<std::string, TheoryEntry> t = {
      {"Q~0", {0, {"x", "y"}}},      {"Q~1", {0, {"x"}}},
      {"Q~2", {0, {"x", "y"}}},      {"Q~3", {0, {"x"}}},
      {"Q~4", {0, {"x", "y"}}},      {"Q~5", {0, {"x", "y", "z"}}},
      {"Q~6", {0, {"x", "y"}}},      {"Q~7a", {0, {"x", "y", "z"}}},
      {"Q~7b", {2, {"u", "x"}}},     {"Q~8", {0, {"x", "y"}}},
  };
  return t;
}

const TheoryEntry& lookup(TheoryKind theory, const std::string& name) {
  const auto& table = theory == TheoryKind::R ? r_table() : q_table();
  auto it = table.find(name);
  if (it == table.end())
    throw CheckError("theory " + to_string(theory) + " has no axiom '" + name + "'");
  return it->second;
}

}  // namespace

const std::vector<std::string>& theory_axiom_names(TheoryKind theory) {
  static const std::vector<std::string> r = {"R~1", "R~2", "R~3", "R~4", "R~5", "R~6"};
  static const std::vector<std::string> q = {"Q~0", "Q~1", "Q~2", "Q~3",  "Q~4",
                                             "Q~5", "Q~6", "Q~7a", "Q~7b", "Q~8"};
  static const std::vector<std::string> none = {};
  switch (theory) {
    case TheoryKind::R: return r;
    case TheoryKind::Q: return q;
    case TheoryKind::None: return none;
  }
  return none;
}

std::size_t theory_axiom_arity(TheoryKind theory, const std::string& name) {
  return lookup(theory, name).arity;
}

std::vector<std::string> theory_axiom_vars(TheoryKind theory, const std::string& name) {
  return lookup(theory, name).vars;
}

FormulaPtr theory_axiom(TheoryKind theory, const std::string& name,
                        const std::vector<std::uint64_t>& params) {
  if (theory == TheoryKind::None) throw CheckError("no theory in scope");
  const TheoryEntry& entry = lookup(theory, name);
  if (params.size() != entry.arity)
    throw CheckError("axiom '" + name + "' takes " + std::to_string(entry.arity) +
                     " parameter(s), got " + std::to_string(params.size()));
  for (std::uint64_t p : params)
    if (p > kParamCap) throw CheckError("axiom parameter exceeds 1000000");
  return theory == TheoryKind::R ? r_axiom(name, params) : q_axiom(name, params);
}

}  // namespace relic
