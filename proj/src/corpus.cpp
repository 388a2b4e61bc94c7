#include "relic/corpus.hpp"

#include <ostream>
#include <random>
#include <stdexcept>

namespace relic {
namespace {

// ---- exhaustive bounded sentence class -------------------------------------

// All Eq and Le atoms over `ts` (Eq block first), then all A and M atoms,
// each filtered by `keep`.  Enumeration order is the nested index order, so
// the class is deterministic without any seed.
template <typename Keep>
void push_atoms(const std::vector<TermPtr>& ts, const Keep& keep,
                std::vector<FormulaPtr>* binary_out,
                std::vector<FormulaPtr>* all_out) {
  for (const auto& s : ts)
    for (const auto& t : ts) {
      FormulaPtr a = Formula::atom_eq(s, t);
      if (!keep(a)) continue;
      if (binary_out) binary_out->push_back(a);
      all_out->push_back(a);
    }
  for (const auto& s : ts)
    for (const auto& t : ts) {
      FormulaPtr a = Formula::atom_le(s, t);
      if (!keep(a)) continue;
      if (binary_out) binary_out->push_back(a);
      all_out->push_back(a);
    }
  for (const auto& s : ts)
    for (const auto& t : ts)
      for (const auto& u : ts) {
        FormulaPtr a = Formula::atom_add(s, t, u);
        if (keep(a)) all_out->push_back(a);
      }
  for (const auto& s : ts)
    for (const auto& t : ts)
      for (const auto& u : ts) {
        FormulaPtr a = Formula::atom_mul(s, t, u);
        if (keep(a)) all_out->push_back(a);
      }
}

}  // namespace

std::vector<FormulaPtr> delta0_sentence_class() {
  std::vector<FormulaPtr> out;
  out.reserve(kDelta0ClassSize);

  std::vector<TermPtr> numerals;
  for (std::uint64_t n = 0; n <= 3; ++n) numerals.push_back(Term::numeral(n));

  // Closed level: atoms, negated atoms, and/or pairs of Eq/Le atoms.
  {
    std::vector<FormulaPtr> atoms, eqle;
    push_atoms(numerals, [](const FormulaPtr&) { return true; }, &eqle, &atoms);
    for (const auto& a : atoms) out.push_back(a);
    for (const auto& a : atoms) out.push_back(Formula::neg(a));
    for (const auto& a : eqle)
      for (const auto& b : eqle) {
        out.push_back(Formula::conj(a, b));
        out.push_back(Formula::disj(a, b));
      }
  }

  // One binder: (Q x <= b) M over matrices mentioning x.
  {
    std::vector<TermPtr> ts = {Term::var("x")};
    ts.insert(ts.end(), numerals.begin(), numerals.end());
    auto keep_x = [](const FormulaPtr& a) { return mentions_free(a, "x"); };
    std::vector<FormulaPtr> atoms, eqle;
    push_atoms(ts, keep_x, &eqle, &atoms);

    std::vector<FormulaPtr> matrices;
    for (const auto& a : atoms) matrices.push_back(a);
    for (const auto& a : atoms) matrices.push_back(Formula::neg(a));
    for (const auto& a : eqle)
      for (const auto& b : eqle) {
        matrices.push_back(Formula::conj(a, b));
        matrices.push_back(Formula::disj(a, b));
      }

    for (int q = 0; q < 2; ++q)
      for (const auto& bound : numerals)
        for (const auto& m : matrices)
          out.push_back(q == 0 ? Formula::bforall("x", bound, m)
                               : Formula::bexists("x", bound, m));
  }

  // Two binders: (Q1 x <= b1)(Q2 y <= b2) M over matrices mentioning both.
  {
    std::vector<TermPtr> ts = {Term::var("x"), Term::var("y")};
    ts.insert(ts.end(), numerals.begin(), numerals.end());
    auto keep_xy = [](const FormulaPtr& a) {
      return mentions_free(a, "x") && mentions_free(a, "y");
    };
    std::vector<FormulaPtr> atoms;
    push_atoms(ts, keep_xy, nullptr, &atoms);

    std::vector<FormulaPtr> matrices;
    for (const auto& a : atoms) matrices.push_back(a);
    for (const auto& a : atoms) matrices.push_back(Formula::neg(a));

    std::vector<TermPtr> outer_bounds = {Term::numeral(1), Term::numeral(2),
                                         Term::numeral(3)};
    std::vector<TermPtr> inner_bounds = outer_bounds;
    inner_bounds.push_back(Term::var("x"));

    for (int q1 = 0; q1 < 2; ++q1)
      for (const auto& b1 : outer_bounds)
        for (int q2 = 0; q2 < 2; ++q2)
          for (const auto& b2 : inner_bounds)
            for (const auto& m : matrices) {
              FormulaPtr inner = q2 == 0 ? Formula::bforall("y", b2, m)
                                         : Formula::bexists("y", b2, m);
              out.push_back(q1 == 0 ? Formula::bforall("x", b1, inner)
                                    : Formula::bexists("x", b1, inner));
            }
  }

  return out;
}

// ---- seeded existential sentences -------------------------------------------

namespace {

// Sentence generator for the one-unbounded-existential fragment.  All
// randomness flows through `pick`, which uses the raw engine stream, so a
// corpus is a pure function of its seed.
struct SigmaGen {
  std::mt19937_64 rng;
  explicit SigmaGen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }

  TermPtr term(const std::vector<std::string>& scope) {
    if (!scope.empty() && pick(2) == 0)
      return Term::var(scope[pick(scope.size())]);
    return Term::numeral(pick(9));  // numerals 0..8
  }

  FormulaPtr atom(const std::vector<std::string>& scope) {
    switch (pick(4)) {
      case 0: return Formula::atom_eq(term(scope), term(scope));
      case 1: return Formula::atom_le(term(scope), term(scope));
      case 2: return Formula::atom_add(term(scope), term(scope), term(scope));
      default: return Formula::atom_mul(term(scope), term(scope), term(scope));
    }
  }

  // Bounded matrix: connective depth <= depth, at most one inner binder.
  FormulaPtr matrix(int depth, std::vector<std::string> scope, bool binder_left) {
    if (depth <= 0) return atom(scope);
    switch (pick(binder_left ? 5 : 4)) {
      case 0: return atom(scope);
      case 1: return Formula::neg(matrix(depth - 1, scope, binder_left));
      case 2:
        return Formula::conj(matrix(depth - 1, scope, binder_left),
                             matrix(depth - 1, scope, binder_left));
      case 3:
        return Formula::disj(matrix(depth - 1, scope, binder_left),
                             matrix(depth - 1, scope, binder_left));
      default: {
        TermPtr bound = pick(2) == 0 ? Term::numeral(1 + pick(4))
                                     : Term::var(scope[pick(scope.size())]);
        scope.push_back("u");
        FormulaPtr body = matrix(depth - 1, scope, false);
        return pick(2) == 0 ? Formula::bforall("u", bound, body)
                            : Formula::bexists("u", bound, body);
      }
    }
  }

  FormulaPtr sentence() {
    for (;;) {
      FormulaPtr m = matrix(2, {"v"}, true);
      if (mentions_free(m, "v")) return Formula::exists("v", m);
    }
  }
};

}  // namespace

std::vector<FormulaPtr> sigma1_true_corpus(std::uint64_t seed, std::size_t count,
                                           std::uint64_t witness_cap) {
  std::vector<FormulaPtr> out;
  out.reserve(count);
  SigmaGen gen(seed);
  std::size_t attempts = 0;
  const std::size_t budget = count * 400 + 1000;
  while (out.size() < count) {
    if (++attempts > budget)
      throw std::runtime_error(
          "sigma1_true_corpus: attempt budget exhausted (seed/cap mismatch)");
    FormulaPtr f = gen.sentence();
    if (eval(f, {}, witness_cap).kind == EvalResult::Kind::TrueWithWitness)
      out.push_back(f);
  }
  return out;
}

std::vector<FormulaPtr> sigma1_mixed_corpus(std::uint64_t seed, std::size_t count) {
  std::vector<FormulaPtr> out;
  out.reserve(count);
  SigmaGen gen(seed);
  while (out.size() < count) out.push_back(gen.sentence());
  return out;
}

// ---- classical corpus for the eliminator ------------------------------------

namespace {

// Classical formula generator.  Atoms compare one +/* term against one flat
// term; when the compound side nests, the other side is held at depth 0
// because the elimination rules copy it into witness bounds and zero splits,
// and only a depth-0 copy stays below the removed node in the termination
// measure.
struct ClassicalGen {
  std::mt19937_64 rng;
  explicit ClassicalGen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }

  TermPtr simple_leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && pick(2) == 0)
      return Term::var(scope[pick(scope.size())]);
    return Term::numeral(pick(3));
  }

  TermPtr arith(int depth, const std::vector<std::string>& scope) {
    if (depth <= 0) return simple_leaf(scope);
    TermPtr inner = arith(depth - 1, scope);
    TermPtr other = simple_leaf(scope);
    TermPtr l = pick(2) == 0 ? inner : other;
    TermPtr r = (l == inner) ? other : inner;
    TermPtr node = pick(2) == 0 ? Term::plus(l, r) : Term::times(l, r);
    return pick(4) == 0 ? Term::succ(node) : node;
  }

  TermPtr shallow_leaf(const std::vector<std::string>& scope) {
    if (!scope.empty() && pick(4) != 0)
      return Term::var(scope[pick(scope.size())]);
    return Term::zero();
  }

  FormulaPtr atom(const std::vector<std::string>& scope) {
    TermPtr compound = arith(1 + static_cast<int>(pick(2)), scope);
    bool flat =
        (compound->tag == TermTag::Plus || compound->tag == TermTag::Times) &&
        !term_has_arith(compound->a) && !term_has_arith(compound->b);
    TermPtr simple = flat ? simple_leaf(scope) : shallow_leaf(scope);
    switch (pick(4)) {
      case 0: return Formula::atom_eq(compound, simple);
      case 1: return Formula::atom_eq(simple, compound);
      case 2: return Formula::atom_le(compound, simple);
      default: return Formula::atom_le(simple, compound);
    }
  }

  FormulaPtr gen(int depth, std::vector<std::string> scope, int binders_left) {
    if (depth <= 0) return atom(scope);
    switch (pick(binders_left > 0 ? 4 : 3)) {
      case 0:
        return Formula::conj(gen(depth - 1, scope, binders_left),
                             gen(depth - 1, scope, binders_left));
      case 1:
        return Formula::disj(gen(depth - 1, scope, binders_left),
                             gen(depth - 1, scope, binders_left));
      case 2:
        return Formula::neg(gen(depth - 1, scope, binders_left));
      default: {
        static const char* pool[] = {"u", "v", "w"};
        std::string x = pool[3 - binders_left];
        TermPtr bound = scope.empty() || pick(2) == 0
                            ? Term::numeral(1 + pick(3))
                            : Term::var(scope[pick(scope.size())]);
        scope.push_back(x);
        FormulaPtr body = gen(depth - 1, scope, binders_left - 1);
        return pick(2) == 0 ? Formula::bforall(x, bound, body)
                            : Formula::bexists(x, bound, body);
      }
    }
  }
};

}  // namespace

std::vector<FormulaPtr> classical_rewrite_corpus(std::uint64_t seed,
                                                 std::size_t count) {
  std::vector<FormulaPtr> out;
  out.reserve(count);
  ClassicalGen gen(seed);
  while (out.size() < count) out.push_back(gen.gen(3, {"x", "y"}, 3));
  return out;
}

// ---- finite-theory derivation instances -------------------------------------

std::vector<QrInstance> q_r_instance_list(std::uint64_t max_param) {
  std::vector<QrInstance> out;
  for (std::uint64_t m = 0; m <= max_param; ++m)
    for (std::uint64_t n = 0; n <= max_param; ++n)
      out.push_back({"R~1", {m, n}});
  for (std::uint64_t m = 0; m <= max_param; ++m)
    for (std::uint64_t n = 0; n <= max_param; ++n)
      out.push_back({"R~2", {m, n}});
  for (std::uint64_t m = 0; m <= max_param; ++m)
    for (std::uint64_t n = 0; n <= max_param; ++n)
      if (m != n) out.push_back({"R~3", {m, n}});
  for (const char* name : {"R~4", "R~5", "R~6"})
    for (std::uint64_t n = 0; n <= max_param; ++n)
      out.push_back({name, {n}});
  return out;
}

// ---- manifests ----------------------------------------------------------------

std::string verdict_string(const EvalResult& r) {
  switch (r.kind) {
    case EvalResult::Kind::True: return "true";
    case EvalResult::Kind::False: return "false";
    case EvalResult::Kind::TrueWithWitness:
      return "true witness=" + std::to_string(r.value);
    case EvalResult::Kind::FalseUpToBound:
      return "unknown-up-to " + std::to_string(r.value);
  }
  return "unknown";  // unreachable
}

void write_manifest(std::ostream& os, const std::string& kind,
                    const std::vector<std::string>& header_params,
                    const std::vector<ManifestRow>& rows) {
  os << "# corpus: " << kind << "\n";
  for (const auto& p : header_params) os << "# " << p << "\n";
  os << "# count: " << rows.size() << "\n";
  for (const auto& row : rows) os << row.verdict << "\t" << row.formula << "\n";
}

}  // namespace relic
