// relic: command-line front end over the proof kernel and its toolchain.
//
// Subcommands: check, prove, eval, rewrite, separator, theory, corpus,
// golden.  Exit codes are uniform across subcommands:
//   0  success
//   1  kernel rejection, verdict mismatch, or a normal-form failure
//   2  malformed input (files, formulas, scripts, flags)
//   3  producer refusal (input outside an operation's fragment); a
//      machine-readable JSON line {"refused": slug, "detail": text} goes to
//      stdout
//
// The CLI adds no semantics of its own: every result equals the
// corresponding library call, and all randomness is seeded and recorded in
// output headers.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relic/corpus.hpp"
#include "relic/kernel.hpp"
#include "relic/meta.hpp"
#include "relic/refuse.hpp"
#include "relic/rewriter.hpp"
#include "relic/script_io.hpp"
#include "relic/semantics.hpp"
#include "relic/synthesis.hpp"
#include "relic/templates.hpp"
#include "relic/theories.hpp"

namespace {

using namespace relic;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitRefused = 3;

// Thrown for malformed CLI-level input that no library error covers.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int report_refusal(const RefuseError& e) {
  nlohmann::json j;
  j["refused"] = e.reason;
  j["detail"] = e.detail;
  std::cout << j.dump() << "\n";
  return kExitRefused;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A formula argument is a path when a file of that name exists, otherwise a
// literal.  '#' lines in files are comments.
std::string formula_text(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::istringstream in(slurp_file(arg));
  std::string line, text;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!text.empty()) text += " ";
    text += line;
  }
  return text;
}

// Relational grammar first (A/M atoms, no + or *), classical as fallback.
// The grammars agree on their common fragment, so the order only determines
// which error message surfaces when the text fits neither.
FormulaPtr parse_auto(const std::string& text) {
  try {
    return parse_formula(text, ParseMode::Relational);
  } catch (const SyntaxError&) {
    return parse_formula(text, ParseMode::Classical);
  }
}

Assignment parse_assignment(const std::string& spec) {
  Assignment env;
  if (spec.empty()) return env;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InputError("bad assignment entry '" + item + "' (want name=value)");
    std::string name = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    try {
      env[name] = std::stoull(value);
    } catch (const std::exception&) {
      throw InputError("bad assignment value '" + value + "' for " + name);
    }
  }
  return env;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  if (!out) throw InputError("failed writing file: " + path);
}

void print_judgment(const Judgment& j) {
  std::cout << "accepted\n";
  std::cout << "profile: " << to_string(j.profile) << "\n";
  std::cout << "theory: " << to_string(j.theory) << "\n";
  std::cout << "assumptions: " << j.assumptions.size() << "\n";
  std::cout << "theorem: " << to_string(j.theorem) << "\n";
}

// ---- check -------------------------------------------------------------

int cmd_check(const std::string& path) {
  ProofScript script = parse_script(slurp_file(path));
  Judgment j = check(script);
  print_judgment(j);
  return kExitOk;
}

// ---- prove -------------------------------------------------------------

int cmd_prove(const std::string& sentence_arg, std::uint64_t cap,
              const std::string& emit) {
  FormulaPtr f = parse_formula(formula_text(sentence_arg), ParseMode::Relational);

  ProofScript script;
  std::string outcome;
  if (classify(f) == FormulaClass::Delta0 && is_sentence(f)) {
    if (eval_delta0(f, {})) {
      script = prove_true_delta0(f);
      outcome = "proved";
    } else {
      script = prove_false_delta0(f);
      outcome = "refuted";
    }
  } else {
    script = prove_sigma1(f, cap);
    outcome = "proved";
  }

  Judgment j = check(script);
  std::cout << outcome << ": " << to_string(j.theorem) << "\n";
  if (!emit.empty()) write_text_file(emit, print_script(script));
  return kExitOk;
}

// ---- eval --------------------------------------------------------------

int cmd_eval(const std::string& formula_arg, const std::string& assign,
             std::uint64_t cap) {
  FormulaPtr f = parse_auto(formula_text(formula_arg));
  Assignment env = parse_assignment(assign);
  EvalResult r = eval(f, env, cap);
  std::cout << verdict_string(r) << "\n";
  return kExitOk;
}

// ---- rewrite -----------------------------------------------------------

int cmd_rewrite(const std::string& mode_name, const std::string& in_path,
                const std::string& out_path, std::uint64_t verify_bound,
                bool trace_steps) {
  RewriteMode mode;
  if (mode_name == "corrected") {
    mode = RewriteMode::Corrected;
  } else if (mode_name == "strict") {
    mode = RewriteMode::StrictPaper;
  } else {
    throw InputError("unknown rewrite mode '" + mode_name +
                     "' (want corrected or strict)");
  }

  FormulaPtr input = parse_auto(formula_text(in_path));

  std::vector<RewriteTraceEntry> trace;
  FormulaPtr output;
  try {
    output = eliminate_functions(input, mode, trace_steps ? &trace : nullptr);
  } catch (const NormalFormError& e) {
    std::cerr << "normal-form failure: " << e.what() << "\n";
    return kExitRejected;
  }

  if (trace_steps) {
    std::size_t k = 0;
    for (const auto& entry : trace) {
      std::cout << "step " << ++k << (entry.decreased ? " [measure down]" : " [no decrease]");
      std::cout << " measure={";
      bool first = true;
      for (int d : entry.after) {
        if (!first) std::cout << ",";
        std::cout << d;
        first = false;
      }
      std::cout << "}: " << to_string(entry.formula) << "\n";
    }
  }

  if (verify_bound > 0) {
    if (!delta0_equivalent(input, output, verify_bound)) {
      std::cerr << "verdict mismatch: input and output disagree on some "
                   "assignment with values <= "
                << verify_bound << "\n";
      return kExitRejected;
    }
  }

  write_text_file(out_path, to_string(output) + "\n");
  std::cout << "rewrote (" << mode_name << "): " << to_string(output) << "\n";
  if (verify_bound > 0)
    std::cout << "verified: agreement on all assignments <= " << verify_bound << "\n";
  return kExitOk;
}

// ---- separator ---------------------------------------------------------

int cmd_separator(const std::string& alpha_arg, const std::string& beta_arg,
                  std::uint64_t n, const std::string& side_name,
                  std::uint64_t cap, const std::string& emit) {
  SeparatorSide side;
  if (side_name == "pos") {
    side = SeparatorSide::Pos;
  } else if (side_name == "neg") {
    side = SeparatorSide::Neg;
  } else {
    throw InputError("unknown side '" + side_name + "' (want pos or neg)");
  }

  SeparatorSpec spec;
  spec.alpha = parse_formula(formula_text(alpha_arg), ParseMode::Relational);
  spec.beta = parse_formula(formula_text(beta_arg), ParseMode::Relational);

  SeparatorFormula sep = build_separator(spec);
  ProofScript script = prove_separator(spec, n, side, cap);
  Judgment j = check(script);

  std::cout << "separator: " << to_string(sep.phi) << "\n";
  std::cout << (side == SeparatorSide::Pos ? "proved" : "refuted") << ": "
            << to_string(j.theorem) << "\n";
  if (!emit.empty()) write_text_file(emit, print_script(script));
  return kExitOk;
}

// ---- theory ------------------------------------------------------------

TheoryKind theory_of(const std::string& axiom) {
  if (axiom.rfind("R~", 0) == 0) return TheoryKind::R;
  if (axiom.rfind("Q~", 0) == 0) return TheoryKind::Q;
  throw InputError("unknown axiom family for '" + axiom + "' (want R~* or Q~*)");
}

std::vector<std::uint64_t> axiom_params(TheoryKind kind, const std::string& axiom,
                                        std::optional<std::uint64_t> m,
                                        std::optional<std::uint64_t> n) {
  std::size_t arity;
  try {
    arity = theory_axiom_arity(kind, axiom);
  } catch (const CheckError& e) {
    throw InputError(e.what());
  }
  std::vector<std::uint64_t> params;
  if (arity >= 2) {
    if (!m) throw InputError("axiom " + axiom + " needs --m");
    params.push_back(*m);
  } else if (m) {
    throw InputError("axiom " + axiom + " does not take --m");
  }
  if (arity >= 1) {
    if (!n) throw InputError("axiom " + axiom + " needs --n");
    params.push_back(*n);
  } else if (n) {
    throw InputError("axiom " + axiom + " does not take --n");
  }
  return params;
}

int cmd_theory_show(const std::string& axiom, std::optional<std::uint64_t> m,
                    std::optional<std::uint64_t> n) {
  TheoryKind kind = theory_of(axiom);
  std::vector<std::uint64_t> params = axiom_params(kind, axiom, m, n);
  FormulaPtr f;
  try {
    f = theory_axiom(kind, axiom, params);
  } catch (const CheckError& e) {
    throw InputError(e.what());
  }
  std::vector<std::string> vars = theory_axiom_vars(kind, axiom);
  std::cout << to_string(f) << "\n";
  if (!vars.empty()) {
    std::cout << "schematic in:";
    for (const auto& v : vars) std::cout << " " << v;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_theory_derive(const std::string& axiom, std::optional<std::uint64_t> m,
                      std::optional<std::uint64_t> n, const std::string& emit) {
  if (theory_of(axiom) != TheoryKind::R)
    throw InputError("derive covers the finite theory only (R~1 .. R~6)");
  std::vector<std::uint64_t> params = axiom_params(TheoryKind::R, axiom, m, n);
  ProofScript script;
  try {
    script = q_proves_r(axiom, params);
  } catch (const CheckError& e) {
    throw InputError(e.what());
  }
  Judgment j = check(script);
  std::cout << "derived: " << to_string(j.theorem) << "\n";
  std::cout << "profile: " << to_string(j.profile) << "\n";
  if (!emit.empty()) write_text_file(emit, print_script(script));
  return kExitOk;
}

// ---- corpus ------------------------------------------------------------

int cmd_corpus(const std::string& kind, const std::string& out_path,
               std::uint64_t seed, std::size_t count, std::uint64_t witness_cap) {
  std::vector<ManifestRow> rows;
  std::vector<std::string> header;

  if (kind == "delta0") {
    header.push_back(
        "enumeration: exhaustive (numerals <= 3, binders <= 2, connective depth <= 3)");
    for (const auto& f : delta0_sentence_class())
      rows.push_back({eval_delta0(f, {}) ? "true" : "false", to_string(f)});
  } else if (kind == "sigma1") {
    header.push_back("seed: " + std::to_string(seed));
    header.push_back("witness-cap: " + std::to_string(witness_cap));
    for (const auto& f : sigma1_true_corpus(seed, count, witness_cap))
      rows.push_back({verdict_string(eval(f, {}, witness_cap)), to_string(f)});
  } else if (kind == "sigma1-mixed") {
    header.push_back("seed: " + std::to_string(seed));
    header.push_back("witness-cap: " + std::to_string(witness_cap));
    for (const auto& f : sigma1_mixed_corpus(seed, count))
      rows.push_back({verdict_string(eval(f, {}, witness_cap)), to_string(f)});
  } else if (kind == "classical") {
    header.push_back("seed: " + std::to_string(seed));
    for (const auto& f : classical_rewrite_corpus(seed, count))
      rows.push_back({"open", to_string(f)});
  } else {
    throw InputError("unknown corpus kind '" + kind +
                     "' (want delta0, sigma1, sigma1-mixed, or classical)");
  }

  std::ostringstream os;
  write_manifest(os, kind, header, rows);
  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
  } else {
    write_text_file(out_path, os.str());
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  }
  return kExitOk;
}

// ---- golden ------------------------------------------------------------

int cmd_golden(const std::string& dir, bool write_files) {
  if (write_files) {
    std::size_t n = write_golden(dir);
    std::cout << "wrote " << n << " scripts to " << dir << "\n";
  }

  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.path().extension() == ".prf") files.push_back(entry.path());
  if (ec) throw InputError("cannot list directory: " + dir);
  if (files.empty()) throw InputError("no .prf files in " + dir);
  std::sort(files.begin(), files.end());

  bool any_malformed = false, any_rejected = false;
  for (const auto& path : files) {
    std::string name = path.stem().string();
    try {
      Judgment j = check(parse_script(slurp_file(path.string())));
      std::cout << name << ": ok [" << to_string(j.profile) << "] "
                << to_string(j.theorem) << "\n";
    } catch (const ScriptFormatError& e) {
      std::cout << name << ": malformed (" << e.what() << ")\n";
      any_malformed = true;
    } catch (const CheckError& e) {
      std::cout << name << ": rejected (" << e.what() << ")\n";
      any_rejected = true;
    }
  }
  if (any_malformed) return kExitMalformed;
  if (any_rejected) return kExitRejected;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relic: proof scripts, decision-procedure provers, and function-symbol "
      "elimination for weak relational arithmetic"};
  app.require_subcommand(1);

  // check
  std::string check_path;
  CLI::App* sc_check = app.add_subcommand("check", "kernel-check a .prf script");
  sc_check->add_option("script", check_path, "proof script file")->required();

  // prove
  std::string prove_sentence, prove_emit;
  std::uint64_t prove_cap = 1000000;
  CLI::App* sc_prove =
      app.add_subcommand("prove", "prove or refute a relational sentence");
  sc_prove->add_option("--sentence", prove_sentence, "sentence (file or literal)")
      ->required();
  sc_prove->add_option("--cap", prove_cap, "witness search cap (default 10^6)");
  sc_prove->add_option("--emit", prove_emit, "write the proof script here");

  // eval
  std::string eval_formula, eval_assign;
  std::uint64_t eval_cap = 1000000;
  CLI::App* sc_eval = app.add_subcommand("eval", "evaluate a formula");
  sc_eval->add_option("--formula", eval_formula, "formula (file or literal)")
      ->required();
  sc_eval->add_option("--assign", eval_assign, "assignment, e.g. x=3,y=0");
  sc_eval->add_option("--cap", eval_cap, "witness search cap (default 10^6)");

  // rewrite
  std::string rw_mode = "corrected", rw_in, rw_out;
  std::uint64_t rw_verify = 8;
  bool rw_trace = false;
  CLI::App* sc_rewrite =
      app.add_subcommand("rewrite", "eliminate + and * from a bounded formula");
  sc_rewrite->add_option("--mode", rw_mode, "corrected or strict (default corrected)");
  sc_rewrite->add_option("--in", rw_in, "input formula (file or literal)")->required();
  sc_rewrite->add_option("--out", rw_out, "output formula file")->required();
  sc_rewrite->add_option("--verify-bound", rw_verify,
                         "check agreement on all assignments <= N (default 8; 0 skips)");
  sc_rewrite->add_flag("--trace", rw_trace, "print each step with its measure");

  // separator
  // The separator cap bounds the membership/disjointness oracle sweep, which
  // is quadratic in the cap; it is a finite-set scale knob, not the witness
  // search cap, so its default is small.
  std::string sep_alpha, sep_beta, sep_side = "pos", sep_emit;
  std::uint64_t sep_n = 0, sep_cap = 20;
  CLI::App* sc_sep = app.add_subcommand(
      "separator", "prove membership side of a separating formula");
  sc_sep->add_option("--alpha", sep_alpha, "alpha(x, v) (file or literal)")->required();
  sc_sep->add_option("--beta", sep_beta, "beta(x, v) (file or literal)")->required();
  sc_sep->add_option("--n", sep_n, "the numeral to separate")->required();
  sc_sep->add_option("--side", sep_side, "pos (n in A) or neg (n in B)");
  sc_sep->add_option("--cap", sep_cap,
                     "membership oracle range; the sweep is quadratic in it "
                     "(default 20)");
  sc_sep->add_option("--emit", sep_emit, "write the proof script here");

  // theory
  CLI::App* sc_theory = app.add_subcommand("theory", "inspect or derive theory axioms");
  sc_theory->require_subcommand(1);
  std::string show_axiom;
  std::optional<std::uint64_t> show_m, show_n;
  CLI::App* sc_show = sc_theory->add_subcommand("show", "print an axiom instance");
  sc_show->add_option("axiom", show_axiom, "axiom name, e.g. R~4 or Q~5")->required();
  sc_show->add_option("--m", show_m, "first numeral parameter");
  sc_show->add_option("--n", show_n, "second numeral parameter");
  std::string derive_axiom, derive_emit;
  std::optional<std::uint64_t> derive_m, derive_n;
  CLI::App* sc_derive = sc_theory->add_subcommand(
      "derive", "derive a finite-theory axiom inside the stronger profile");
  sc_derive->add_option("axiom", derive_axiom, "axiom name, R~1 .. R~6")->required();
  sc_derive->add_option("--m", derive_m, "first numeral parameter");
  sc_derive->add_option("--n", derive_n, "second numeral parameter");
  sc_derive->add_option("--emit", derive_emit, "write the derivation here");

  // corpus
  std::string corpus_kind, corpus_out;
  std::uint64_t corpus_seed = 20260819, corpus_cap = 20;
  std::size_t corpus_count = 500;
  CLI::App* sc_corpus =
      app.add_subcommand("corpus", "generate a formula corpus manifest");
  sc_corpus
      ->add_option("--kind", corpus_kind,
                   "delta0, sigma1, sigma1-mixed, or classical")
      ->required();
  sc_corpus->add_option("--out", corpus_out, "manifest file ('-' for stdout)");
  sc_corpus->add_option("--seed", corpus_seed, "generator seed (default 20260819)");
  sc_corpus->add_option("--count", corpus_count, "row count (default 500)");
  sc_corpus->add_option("--witness-cap", corpus_cap,
                        "witness cap for existential kinds (default 20)");

  // golden
  std::string golden_dir = "golden";
  bool golden_write = false;
  CLI::App* sc_golden =
      app.add_subcommand("golden", "check every .prf script in a directory");
  sc_golden->add_option("--dir", golden_dir, "script directory (default golden)");
  sc_golden->add_flag("--write", golden_write,
                      "write the shipped template scripts there first");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_check) return cmd_check(check_path);
    if (*sc_prove) return cmd_prove(prove_sentence, prove_cap, prove_emit);
    if (*sc_eval) return cmd_eval(eval_formula, eval_assign, eval_cap);
    if (*sc_rewrite)
      return cmd_rewrite(rw_mode, rw_in, rw_out, rw_verify, rw_trace);
    if (*sc_sep)
      return cmd_separator(sep_alpha, sep_beta, sep_n, sep_side, sep_cap, sep_emit);
    if (*sc_theory) {
      if (*sc_show) return cmd_theory_show(show_axiom, show_m, show_n);
      if (*sc_derive)
        return cmd_theory_derive(derive_axiom, derive_m, derive_n, derive_emit);
    }
    if (*sc_corpus)
      return cmd_corpus(corpus_kind, corpus_out, corpus_seed, corpus_count,
                        corpus_cap);
    if (*sc_golden) return cmd_golden(golden_dir, golden_write);
  } catch (const RefuseError& e) {
    return report_refusal(e);
  } catch (const EvalUnsupported& e) {
    return report_refusal(RefuseError("unsupported-class", e.what()));
  } catch (const ScriptFormatError& e) {
    std::cerr << "malformed script: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const SyntaxError& e) {
    std::cerr << "malformed formula: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const InputError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const EvalError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const CheckError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;  // unreachable: a subcommand is required
}
