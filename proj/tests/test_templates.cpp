#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "relic/builder.hpp"
#include "relic/script_io.hpp"
#include "relic/semantics.hpp"
#include "relic/templates.hpp"
#include "relic/theories.hpp"

using namespace relic;

namespace {

FormulaPtr rel(const std::string& s) { return parse_formula(s, ParseMode::Relational); }

FormulaPtr A() { return rel("x = 0"); }
FormulaPtr B() { return rel("y = 0"); }
FormulaPtr C() { return rel("z = 0"); }

const TemplateEntry& entry(const std::string& name) {
  for (const auto& e : golden_templates())
    if (e.name == name) return e;
  FAIL("no template named ", name);
  static TemplateEntry dummy;
  return dummy;
}

// All assumptions definitely true but the theorem definitely false would be a
// soundness violation of the derivation (w.r.t. the standard number model).
bool script_sound(const ProofScript& s, uint64_t max_val, uint64_t cap) {
  Judgment j = check(s);
  FormulaPtr all = j.theorem;
  for (const auto& f : j.assumptions) all = Formula::conj(all, f);
  return for_each_assignment(all, max_val, [&](const Assignment& env) {
    for (const auto& f : j.assumptions)
      if (eval_trivalent(f, env, cap) != Tri::True) return true;
    return eval_trivalent(j.theorem, env, cap) != Tri::False;
  });
}

}  // namespace

TEST_CASE("the catalog is complete and uniquely named") {
  const auto& all = golden_templates();
  CHECK(all.size() == 25);
  std::set<std::string> names;
  for (const auto& e : all) {
    CHECK(names.insert(e.name).second);
    CHECK(!e.summary.empty());
  }
}

TEST_CASE("every template derives its advertised theorem") {
  FormulaPtr a = A(), b = B(), c = C(), d = rel("w = 0");
  FormulaPtr right = Formula::disj(a, Formula::disj(b, c));
  FormulaPtr left = Formula::disj(Formula::disj(a, b), c);

  struct Expect {
    std::string name;
    FormulaPtr theorem;
    std::size_t assumptions;
  };
  std::vector<Expect> table = {
      {"or-associativity", Formula::iff(right, left), 0},
      {"adjunction", Formula::conj(a, b), 2},
      {"double-negation", Formula::neg(Formula::neg(a)), 1},
      {"equality-transfer", rel("v = S(0) -> A(v, S(0), z)"), 1},
      {"generalization", rel("All x . x = x"), 0},
      {"suffixing", Formula::imp(Formula::imp(b, c), Formula::imp(a, c)), 1},
      {"prefixing", Formula::imp(Formula::imp(c, a), Formula::imp(c, b)), 1},
      {"tone-from-suffix-prefix", Formula::imp(Formula::imp(b, c), Formula::imp(a, d)), 2},
      {"contraposition", Formula::imp(Formula::neg(b), Formula::neg(a)), 1},
      {"demorgan-disjunction",
       Formula::iff(Formula::neg(Formula::disj(a, b)),
                    Formula::conj(Formula::neg(a), Formula::neg(b))),
       0},
      {"demorgan-conjunction",
       Formula::imp(Formula::disj(Formula::neg(a), Formula::neg(b)),
                    Formula::neg(Formula::conj(a, b))),
       0},
      {"conjoining-weakening", Formula::imp(a, Formula::imp(b, Formula::conj(a, b))), 0},
      {"absurdity-spread", Formula::imp(Formula::neg(a), Formula::imp(a, c)), 0},
      {"currying", Formula::imp(a, Formula::imp(b, c)), 1},
      {"crisp-uncurrying", Formula::imp(Formula::conj(a, b), c), 2},
      {"crisp-disjunction",
       Formula::disj(Formula::disj(a, b), Formula::neg(Formula::disj(a, b))), 2},
      {"bridge-weakening", Formula::imp(b, a), 1},
      {"bridge-and-intro", Formula::imp(c, Formula::conj(a, b)), 2},
      {"bridge-or-elim", Formula::imp(Formula::disj(a, b), c), 2},
      {"bridge-trans", Formula::imp(a, c), 2},
      {"bridge-morg", Formula::neg(Formula::conj(a, b)), 1},
      {"equality-import", rel("x = y & A(x, S(0), z) -> A(y, S(0), z)"), 0},
      {"equality-export", rel("x = y -> (A(x, S(0), z) -> A(y, S(0), z))"), 0},
      {"successor-monotonicity",
       Formula::conj(rel("x <= y -> S(x) <= S(y)"), rel("S(x) <= S(y) -> x <= y")), 0},
      {"case-split", rel("Ex v . x = v"), 0},
  };
  CHECK(table.size() == golden_templates().size());
  for (const auto& ex : table) {
    CAPTURE(ex.name);
    const TemplateEntry& e = entry(ex.name);
    Judgment j = check(e.script);
    CHECK(kernel_equal(j.theorem, ex.theorem));
    CHECK(j.assumptions.size() == ex.assumptions);
  }
}

TEST_CASE("every template is sound in the standard model") {
  for (const auto& e : golden_templates()) {
    CAPTURE(e.name);
    CHECK(script_sound(e.script, 3, 8));
  }
}

TEST_CASE("golden files round-trip through the text format") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "relic-golden-test";
  fs::remove_all(dir);
  CHECK(write_golden(dir.string()) == golden_templates().size());
  for (const auto& e : golden_templates()) {
    CAPTURE(e.name);
    std::ifstream in(dir / (e.name + ".prf"));
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    ProofScript s = parse_script(buf.str());
    Judgment j = check(s);
    CHECK(kernel_equal(j.theorem, check(e.script).theorem));
  }
  fs::remove_all(dir);
}

TEST_CASE("builder: staged instantiation of schematic axioms") {
  ScriptBuilder sb(Profile::QSLw, TheoryKind::Q);
  std::size_t q2 = sb.theory_step("Q~2");  // S(x) = S(y) -> x = y
  std::size_t got = sb.instantiate(q2, {{"x", parse_term("u", ParseMode::Relational)},
                                        {"y", parse_term("S(u)", ParseMode::Relational)}});
  CHECK(kernel_equal(sb.conc(got), rel("S(u) = S(S(u)) -> u = S(u)")));
  CHECK_NOTHROW(sb.finish());

  // A term mentioning a variable that is instantiated later is rejected.
  ScriptBuilder sb2(Profile::QSLw, TheoryKind::Q);
  std::size_t q2b = sb2.theory_step("Q~2");
  CHECK_THROWS_AS(sb2.instantiate(q2b, {{"x", parse_term("y", ParseMode::Relational)},
                                        {"y", parse_term("0", ParseMode::Relational)}}),
                  CheckError);
}

TEST_CASE("builder: disjunction plumbing") {
  ScriptBuilder sb(Profile::QL0);
  FormulaPtr big = rel("x = 0 | x = S(0) | x = S(S(0))");
  std::size_t first = sb.imp_into_disjunction(big, rel("x = 0"));
  CHECK(kernel_equal(sb.conc(first), Formula::imp(rel("x = 0"), big)));
  std::size_t mid = sb.imp_into_disjunction(big, rel("x = S(0)"));
  CHECK(kernel_equal(sb.conc(mid), Formula::imp(rel("x = S(0)"), big)));
  std::size_t lastd = sb.imp_into_disjunction(big, rel("x = S(S(0))"));
  CHECK(kernel_equal(sb.conc(lastd), Formula::imp(rel("x = S(S(0))"), big)));
  std::size_t single = sb.imp_into_disjunction(rel("x = 0"), rel("x = 0"));
  CHECK(kernel_equal(sb.conc(single), rel("x = 0 -> x = 0")));
  CHECK_THROWS_AS(sb.imp_into_disjunction(big, rel("x = S(S(S(0)))")), CheckError);
  CHECK_NOTHROW(sb.finish());

  // fold_or_elim stitches the case implications back together.
  ScriptBuilder fb(Profile::QL0, TheoryKind::R);
  std::vector<std::size_t> cases;
  for (int k = 0; k <= 2; ++k) {
    FormulaPtr ek = Formula::atom_eq(Term::var("x"), Term::numeral(k));
    std::size_t step = fb.imp_into_disjunction(big, ek);  // x=k -> big
    cases.push_back(step);
  }
  std::size_t folded = fb.fold_or_elim(cases);
  CHECK(kernel_equal(fb.conc(folded), Formula::imp(big, big)));
  CHECK_NOTHROW(fb.finish());
}

TEST_CASE("builder: profile guards") {
  ScriptBuilder sb(Profile::QL0);
  std::size_t i = sb.identity(rel("x = 0"));
  CHECK_THROWS_AS(sb.contrapose(i), CheckError);
  CHECK_THROWS_AS(sb.red(rel("x = 0"), rel("y = 0")), CheckError);
  CHECK_THROWS_AS(sb.exp(i), CheckError);

  ScriptBuilder sw(Profile::QSLw);
  std::size_t cert = sw.assume("c", rel("x = 0 | !(x = 0)"));
  std::size_t notcert = sw.assume("n", rel("x = 0 | !(y = 0)"));
  std::size_t imp = sw.assume("i", rel("x = 0 -> (y = 0 -> z = 0)"));
  CHECK_THROWS_AS(sw.crisp_import(notcert, imp), CheckError);
  CHECK_NOTHROW(sw.crisp_import(cert, imp));
}

TEST_CASE("builder: equality transfer matches only the real template") {
  ScriptBuilder sb(Profile::QL0);
  std::size_t eq = sb.assume("eq", rel("S(0) = y"));
  std::size_t inst = sb.assume("inst", rel("A(S(0), S(0), z)"));
  // Wrong template: the instance step does not match phi[x:=s].
  CHECK_THROWS_AS(sb.aux(eq, inst, "v", rel("A(v, 0, z)")), CheckError);
  std::size_t got = sb.aux(eq, inst, "v", rel("A(v, S(0), z)"));
  CHECK(kernel_equal(sb.conc(got), rel("A(y, S(0), z)")));
  CHECK_NOTHROW(sb.finish());
}

namespace {

TermPtr rand_term(std::mt19937_64& rng) {
  static const char* vars[] = {"x", "y", "z", "w"};
  switch (rng() % 3) {
    case 0: return Term::var(vars[rng() % 4]);
    case 1: return Term::numeral(rng() % 3);
    default: return Term::succ(Term::var(vars[rng() % 4]));
  }
}

FormulaPtr rand_formula(std::mt19937_64& rng, int depth) {
  switch (rng() % (depth == 0 ? 3 : 6)) {
    case 0: return Formula::atom_eq(rand_term(rng), rand_term(rng));
    case 1: return Formula::atom_le(rand_term(rng), rand_term(rng));
    case 2: return Formula::atom_add(rand_term(rng), rand_term(rng), rand_term(rng));
    case 3: return Formula::conj(rand_formula(rng, depth - 1), rand_formula(rng, depth - 1));
    case 4: return Formula::disj(rand_formula(rng, depth - 1), rand_formula(rng, depth - 1));
    default: return Formula::imp(rand_formula(rng, depth - 1), rand_formula(rng, depth - 1));
  }
}

}  // namespace

// Every derived-move template, expanded at randomized argument formulas of
// connective depth up to three, must be kernel-accepted under its profile.
TEST_CASE("builder: randomized template expansion is kernel-accepted") {
  std::mt19937_64 rng(0x5eed5eedULL);
  for (int trial = 0; trial < 40; ++trial) {
    CAPTURE(trial);
    FormulaPtr a = rand_formula(rng, 3);
    FormulaPtr b = rand_formula(rng, 3);
    FormulaPtr c = rand_formula(rng, 3);

    // Weak-profile moves over assumed premises.
    ScriptBuilder sb(Profile::QL0);
    std::size_t pa = sb.assume("a", a);
    std::size_t pab = sb.assume("ab", Formula::imp(a, b));
    std::size_t pbc = sb.assume("bc", Formula::imp(b, c));
    std::size_t pca = sb.assume("ca", Formula::imp(c, a));
    std::size_t pcb = sb.assume("cb", Formula::imp(c, b));
    std::size_t pac = sb.assume("ac", Formula::imp(a, c));
    std::size_t pnn = sb.assume("nn", Formula::disj(Formula::neg(a), Formula::neg(b)));
    sb.identity(a);
    sb.weaken(pa, b);
    std::size_t m = sb.mp(pa, pab);
    CHECK(kernel_equal(sb.conc(m), b));
    std::size_t t = sb.trans(pab, pbc);
    CHECK(kernel_equal(sb.conc(t), Formula::imp(a, c)));
    sb.adjoin(pa, m);
    sb.and_intro(pca, pcb);
    sb.or_elim(pac, pbc);
    sb.morg(pnn);
    sb.dni(pa);
    // The bottom-left element of a disjunction is decomposed further, so keep
    // that slot non-disjunctive to make the disjunct list {a0, b, c}.
    FormulaPtr a0 = a->tag == FormulaTag::Or ? Formula::neg(a) : a;
    FormulaPtr big = Formula::disj(Formula::disj(a0, b), c);
    std::vector<std::size_t> cases;
    for (const FormulaPtr& d : {a0, b, c}) cases.push_back(sb.imp_into_disjunction(big, d));
    std::size_t folded = sb.fold_or_elim(cases);
    CHECK(kernel_equal(sb.conc(folded), Formula::imp(big, big)));
    CHECK_NOTHROW(sb.finish());

    // Strong-profile moves.
    ScriptBuilder sw(Profile::QSLw);
    std::size_t qab = sw.assume("ab", Formula::imp(a, b));
    std::size_t qcab = sw.assume("cab", Formula::imp(Formula::conj(a, b), c));
    std::size_t qcert = sw.assume("cert", Formula::disj(a, Formula::neg(a)));
    std::size_t qcertb = sw.assume("certb", Formula::disj(b, Formula::neg(b)));
    std::size_t qimp = sw.assume("imp", Formula::imp(a, Formula::imp(b, c)));
    sw.contrapose(qab);
    sw.suffix_with(qab, c);
    sw.prefix_with(qab, c);
    sw.red(a, b);
    sw.weakening_strong(a, b);
    std::size_t ex = sw.exp(qcab);
    CHECK(kernel_equal(sw.conc(ex), Formula::imp(a, Formula::imp(b, c))));
    std::size_t imported = sw.crisp_import(qcert, qimp);
    CHECK(kernel_equal(sw.conc(imported), Formula::imp(Formula::conj(a, b), c)));
    sw.crisp_or(qcert, qcertb);
    CHECK_NOTHROW(sw.finish());
  }
}
