#include "relic/semantics.hpp"

#include <vector>

namespace relic {

namespace {

constexpr std::uint64_t kValueCap = (std::uint64_t{1} << 62);

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > kValueCap || a > kValueCap - b) throw EvalError("term value too large");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && (b > kValueCap / a)) throw EvalError("term value too large");
  return a * b;
}

}  // namespace

std::uint64_t eval_term(const TermPtr& t, const Assignment& env) {
  switch (t->tag) {
    case TermTag::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw EvalError("unbound variable '" + t->name + "'");
      return it->second;
    }
    case TermTag::Zero: return 0;
    case TermTag::Succ: return checked_add(eval_term(t->a, env), 1);
    case TermTag::Plus: return checked_add(eval_term(t->a, env), eval_term(t->b, env));
    case TermTag::Times: return checked_mul(eval_term(t->a, env), eval_term(t->b, env));
  }
  throw EvalError("malformed term");
}

namespace {

bool eval_atom(const Formula& f, const Assignment& env) {
  switch (f.atom) {
    case AtomTag::Eq: return eval_term(f.args[0], env) == eval_term(f.args[1], env);
    case AtomTag::Le: return eval_term(f.args[0], env) <= eval_term(f.args[1], env);
    case AtomTag::A:
      return checked_add(eval_term(f.args[0], env), eval_term(f.args[1], env)) ==
             eval_term(f.args[2], env);
    case AtomTag::M:
      return checked_mul(eval_term(f.args[0], env), eval_term(f.args[1], env)) ==
             eval_term(f.args[2], env);
  }
  throw EvalError("malformed atom");
}

}  // namespace

bool eval_delta0(const FormulaPtr& f, const Assignment& env) {
  switch (f->tag) {
    case FormulaTag::Atom: return eval_atom(*f, env);
    case FormulaTag::Bot: return false;
    case FormulaTag::And: return eval_delta0(f->l, env) && eval_delta0(f->r, env);
    case FormulaTag::Or: return eval_delta0(f->l, env) || eval_delta0(f->r, env);
    case FormulaTag::Imp: return !eval_delta0(f->l, env) || eval_delta0(f->r, env);
    case FormulaTag::BForall: {
      std::uint64_t b = eval_term(f->bound, env);
      Assignment inner = env;
      for (std::uint64_t w = 0; w <= b; ++w) {
        inner[f->var] = w;
        if (!eval_delta0(f->l, inner)) return false;
      }
      return true;
    }
    case FormulaTag::BExists: {
      std::uint64_t b = eval_term(f->bound, env);
      Assignment inner = env;
      for (std::uint64_t w = 0; w <= b; ++w) {
        inner[f->var] = w;
        if (eval_delta0(f->l, inner)) return true;
      }
      return false;
    }
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      throw EvalUnsupported("unbounded quantifier in Delta0 evaluation");
  }
  throw EvalError("malformed formula");
}

EvalResult eval(const FormulaPtr& f, const Assignment& env, std::uint64_t sigma1_cap) {
  switch (classify(f)) {
    case FormulaClass::Delta0:
      return {eval_delta0(f, env) ? EvalResult::Kind::True : EvalResult::Kind::False, 0};
    case FormulaClass::Sigma1: {
      Assignment inner = env;
      for (std::uint64_t w = 0; w <= sigma1_cap; ++w) {
        inner[f->var] = w;
        if (eval_delta0(f->l, inner))
          return {EvalResult::Kind::TrueWithWitness, w};
      }
      return {EvalResult::Kind::FalseUpToBound, sigma1_cap};
    }
    case FormulaClass::Other:
      throw EvalUnsupported(
          "evaluation supports Delta0 and Sigma1 formulas only (got class Other)");
  }
  throw EvalError("unreachable");
}

Tri eval_trivalent(const FormulaPtr& f, const Assignment& env, std::uint64_t cap) {
  switch (f->tag) {
    case FormulaTag::Atom: return eval_atom(*f, env) ? Tri::True : Tri::False;
    case FormulaTag::Bot: return Tri::False;
    case FormulaTag::And: {
      Tri a = eval_trivalent(f->l, env, cap);
      if (a == Tri::False) return Tri::False;
      Tri b = eval_trivalent(f->r, env, cap);
      if (b == Tri::False) return Tri::False;
      return (a == Tri::True && b == Tri::True) ? Tri::True : Tri::Unknown;
    }
    case FormulaTag::Or: {
      Tri a = eval_trivalent(f->l, env, cap);
      if (a == Tri::True) return Tri::True;
      Tri b = eval_trivalent(f->r, env, cap);
      if (b == Tri::True) return Tri::True;
      return (a == Tri::False && b == Tri::False) ? Tri::False : Tri::Unknown;
    }
    case FormulaTag::Imp: {
      Tri a = eval_trivalent(f->l, env, cap);
      if (a == Tri::False) return Tri::True;
      Tri b = eval_trivalent(f->r, env, cap);
      if (b == Tri::True) return Tri::True;
      if (a == Tri::True && b == Tri::False) return Tri::False;
      return Tri::Unknown;
    }
    case FormulaTag::BForall:
    case FormulaTag::BExists: {
      std::uint64_t b = eval_term(f->bound, env);
      bool universal = f->tag == FormulaTag::BForall;
      Assignment inner = env;
      bool unknown = false;
      for (std::uint64_t w = 0; w <= b; ++w) {
        inner[f->var] = w;
        Tri t = eval_trivalent(f->l, inner, cap);
        if (universal && t == Tri::False) return Tri::False;
        if (!universal && t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) unknown = true;
      }
      if (unknown) return Tri::Unknown;
      return universal ? Tri::True : Tri::False;
    }
    case FormulaTag::Forall: {
      // Conclusive only negatively: a counterexample within the cap.
      Assignment inner = env;
      for (std::uint64_t w = 0; w <= cap; ++w) {
        inner[f->var] = w;
        if (eval_trivalent(f->l, inner, cap) == Tri::False) return Tri::False;
      }
      return Tri::Unknown;
    }
    case FormulaTag::Exists: {
      // Conclusive only positively: a witness within the cap.
      Assignment inner = env;
      for (std::uint64_t w = 0; w <= cap; ++w) {
        inner[f->var] = w;
        if (eval_trivalent(f->l, inner, cap) == Tri::True) return Tri::True;
      }
      return Tri::Unknown;
    }
  }
  throw EvalError("malformed formula");
}

bool for_each_assignment(const FormulaPtr& f, std::uint64_t max_val,
                         const std::function<bool(const Assignment&)>& fn) {
  std::set<std::string> fv = free_vars(f);
  std::vector<std::string> vars(fv.begin(), fv.end());
  Assignment env;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == vars.size()) return fn(env);
    for (std::uint64_t w = 0; w <= max_val; ++w) {
      env[vars[i]] = w;
      if (!go(i + 1)) return false;
    }
    return true;
  };
  return go(0);
}

bool never_refuted(const FormulaPtr& f, std::uint64_t max_val, std::uint64_t cap) {
  return for_each_assignment(f, max_val, [&](const Assignment& env) {
    return eval_trivalent(f, env, cap) != Tri::False;
  });
}

bool delta0_equivalent(const FormulaPtr& a, const FormulaPtr& b, std::uint64_t max_val) {
  std::set<std::string> fv = free_vars(a);
  for (const auto& v : free_vars(b)) fv.insert(v);
  std::vector<std::string> vars(fv.begin(), fv.end());
  Assignment env;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == vars.size()) return eval_delta0(a, env) == eval_delta0(b, env);
    for (std::uint64_t w = 0; w <= max_val; ++w) {
      env[vars[i]] = w;
      if (!go(i + 1)) return false;
    }
    return true;
  };
  return go(0);
}

}  // namespace relic
