#pragma once
// Deterministic formula corpora shared by the unit tests, the acceptance
// gate, and the `corpus` CLI subcommand.
//
// Four families:
//   * an exhaustive class of closed bounded relational sentences enumerated
//     from a fixed grammar (no randomness; the size is pinned);
//   * seeded random existential sentences (one unbounded Ex over a bounded
//     relational matrix), either filtered to be true with a small witness or
//     left unfiltered ("mixed");
//   * a seeded classical corpus (terms built with + and *) exercising the
//     function-symbol eliminator;
//   * the instance list for deriving the finite-theory axioms inside the
//     stronger profile.
//
// All seeded generation runs on std::mt19937_64, so every corpus is
// reproducible byte-for-byte from the seed recorded in its manifest header.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relic/semantics.hpp"
#include "relic/syntax.hpp"

namespace relic {

// ---- exhaustive bounded sentence class ------------------------------------
//
// The class is the exhaustive enumeration, in a fixed deterministic order,
// of this grammar (numerals at most 3, at most two bounded quantifiers,
// connective depth at most 3 counting quantifiers and negation):
//
//   closed level:  every atom over the numerals 0..3 (Eq/Le over all pairs,
//                  A/M over all triples), every negated such atom, and every
//                  and/or combination of two Eq/Le atoms;
//   one binder:    (Q x <= b) M with Q in {All, Ex}, b a numeral 0..3, and
//                  M an atom over {x, 0..3} mentioning x, a negated such
//                  atom, or an and/or pair of Eq/Le atoms over {x, 0..3}
//                  both of which mention x;
//   two binders:   (Q1 x <= b1)(Q2 y <= b2) M with b1 a numeral 1..3, b2 a
//                  numeral 1..3 or the outer variable x, and M an atom over
//                  {x, y, 0..3} mentioning both variables, or its negation.
//
// Every member is a closed relational sentence whose quantifiers are all
// bounded, so the exact evaluator decides it and exactly one of the
// true/false provers must succeed on it.
std::vector<FormulaPtr> delta0_sentence_class();

// The size of delta0_sentence_class(), pinned so silent grammar drift fails
// fast: 2368 closed + 7424 one-binder + 6144 two-binder.
inline constexpr std::size_t kDelta0ClassSize = 15936;

// ---- seeded existential sentences ------------------------------------------
//
// Each sentence is  Ex v . M(v)  with M a bounded relational matrix over v:
// terms are v, an optional inner bound variable, and numerals at most 8;
// connective depth at most 2, with inner bounded quantifiers allowed but
// never nested inside each other.
//
// `sigma1_true_corpus` rejection-samples the generator (deterministically)
// until `count` sentences hold with least witness <= witness_cap; throws
// std::runtime_error if the generator cannot fill the quota within a fixed
// attempt budget (a seed/parameter bug, not an input condition).
//
// `sigma1_mixed_corpus` returns the first `count` generated sentences
// unfiltered; callers get a mix of true-with-witness sentences and sentences
// with no witness below any particular cap.
std::vector<FormulaPtr> sigma1_true_corpus(std::uint64_t seed, std::size_t count,
                                           std::uint64_t witness_cap);
std::vector<FormulaPtr> sigma1_mixed_corpus(std::uint64_t seed, std::size_t count);

// ---- classical corpus for the eliminator -----------------------------------
//
// `count` classical formulas over free variables {x, y}: atoms compare one
// +/* term (operator nesting at most 2, occasional successor wrappers) with
// one flat term, under and/or/not and up to three bounded quantifiers whose
// bounds are variables or numerals.  Atoms whose compound side is nested
// keep the other side at depth 0 (a variable or 0): the elimination rules
// copy that side into witness bounds and zero splits, and only a depth-0
// copy stays below the removed +/* node in the termination measure.
std::vector<FormulaPtr> classical_rewrite_corpus(std::uint64_t seed, std::size_t count);

// ---- finite-theory derivation instances ------------------------------------

struct QrInstance {
  std::string axiom;                  // "R~1" .. "R~6"
  std::vector<std::uint64_t> params;  // numeral parameters for the instance
};

// Every axiom instance with parameters <= max_param: all (m, n) for the
// addition/multiplication graphs, all m != n for numeral distinctness, and
// all n for the three bounded-order schemes.  max_param = 6 gives 161
// instances.
std::vector<QrInstance> q_r_instance_list(std::uint64_t max_param);

// ---- manifests --------------------------------------------------------------
//
// Plain-text corpus manifest: '#' header lines recording the generation
// parameters (including the seed, when one was used), then one row per
// formula, "<verdict>\t<formula>".  Verdicts use the evaluator's vocabulary:
// "true", "false", "true witness=N", "unknown-up-to N", or "open" for
// formulas with free variables (the classical corpus), which no closed
// verdict applies to.

struct ManifestRow {
  std::string verdict;
  std::string formula;
};

// Renders an evaluator result in the manifest/CLI vocabulary.
std::string verdict_string(const EvalResult& r);

void write_manifest(std::ostream& os, const std::string& kind,
                    const std::vector<std::string>& header_params,
                    const std::vector<ManifestRow>& rows);

}  // namespace relic
