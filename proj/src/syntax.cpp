#include "relic/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace relic {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

namespace {

bool valid_var_name(const std::string& s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

TermPtr mk_term(TermTag tag, std::string name, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->name = std::move(name);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

}  // namespace

TermPtr Term::var(const std::string& name) {
  if (!valid_var_name(name)) throw FormError("invalid variable name '" + name + "'");
  return mk_term(TermTag::Var, name, nullptr, nullptr);
}

TermPtr Term::zero() {
  static const TermPtr z = mk_term(TermTag::Zero, "", nullptr, nullptr);
  return z;
}

TermPtr Term::succ(TermPtr t) {
  if (!t) throw FormError("succ of null term");
  return mk_term(TermTag::Succ, "", std::move(t), nullptr);
}

TermPtr Term::plus(TermPtr l, TermPtr r) {
  if (!l || !r) throw FormError("plus of null term");
  return mk_term(TermTag::Plus, "", std::move(l), std::move(r));
}

TermPtr Term::times(TermPtr l, TermPtr r) {
  if (!l || !r) throw FormError("times of null term");
  return mk_term(TermTag::Times, "", std::move(l), std::move(r));
}

TermPtr Term::numeral(std::uint64_t n) {
  TermPtr t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
  return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->tag != b->tag) return false;
  switch (a->tag) {
    case TermTag::Var: return a->name == b->name;
    case TermTag::Zero: return true;
    case TermTag::Succ: return term_equal(a->a, b->a);
    case TermTag::Plus:
    case TermTag::Times: return term_equal(a->a, b->a) && term_equal(a->b, b->b);
  }
  return false;
}

std::optional<std::uint64_t> numeral_value(const TermPtr& t) {
  std::uint64_t n = 0;
  const Term* p = t.get();
  while (p) {
    if (p->tag == TermTag::Zero) return n;
    if (p->tag != TermTag::Succ) return std::nullopt;
    ++n;
    p = p->a.get();
  }
  return std::nullopt;
}

bool term_mentions(const TermPtr& t, const std::string& var) {
  if (!t) return false;
  switch (t->tag) {
    case TermTag::Var: return t->name == var;
    case TermTag::Zero: return false;
    case TermTag::Succ: return term_mentions(t->a, var);
    case TermTag::Plus:
    case TermTag::Times: return term_mentions(t->a, var) || term_mentions(t->b, var);
  }
  return false;
}

void collect_term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  switch (t->tag) {
    case TermTag::Var: out.insert(t->name); return;
    case TermTag::Zero: return;
    case TermTag::Succ: collect_term_vars(t->a, out); return;
    case TermTag::Plus:
    case TermTag::Times:
      collect_term_vars(t->a, out);
      collect_term_vars(t->b, out);
      return;
  }
}

bool term_has_arith(const TermPtr& t) {
  if (!t) return false;
  switch (t->tag) {
    case TermTag::Var:
    case TermTag::Zero: return false;
    case TermTag::Succ: return term_has_arith(t->a);
    case TermTag::Plus:
    case TermTag::Times: return true;
  }
  return false;
}

int term_depth(const TermPtr& t) {
  switch (t->tag) {
    case TermTag::Var:
    case TermTag::Zero: return 0;
    case TermTag::Succ: return 1 + term_depth(t->a);
    case TermTag::Plus:
    case TermTag::Times: return 1 + std::max(term_depth(t->a), term_depth(t->b));
  }
  return 0;
}

TermPtr term_subst(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  if (!t || !term_mentions(t, var)) return t;
  switch (t->tag) {
    case TermTag::Var: return repl;
    case TermTag::Zero: return t;
    case TermTag::Succ: return Term::succ(term_subst(t->a, var, repl));
    case TermTag::Plus: return Term::plus(term_subst(t->a, var, repl), term_subst(t->b, var, repl));
    case TermTag::Times:
      return Term::times(term_subst(t->a, var, repl), term_subst(t->b, var, repl));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Formula construction
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<Formula> mk_mut(FormulaTag tag) {
  auto f = std::make_shared<Formula>();
  f->tag = tag;
  return f;
}

}  // namespace

FormulaPtr Formula::atom_eq(TermPtr s, TermPtr t) {
  auto f = mk_mut(FormulaTag::Atom);
  f->atom = AtomTag::Eq;
  f->args = {std::move(s), std::move(t)};
  return f;
}

FormulaPtr Formula::atom_le(TermPtr s, TermPtr t) {
  auto f = mk_mut(FormulaTag::Atom);
  f->atom = AtomTag::Le;
  f->args = {std::move(s), std::move(t)};
  return f;
}

FormulaPtr Formula::atom_add(TermPtr s, TermPtr t, TermPtr u) {
  auto f = mk_mut(FormulaTag::Atom);
  f->atom = AtomTag::A;
  f->args = {std::move(s), std::move(t), std::move(u)};
  return f;
}

FormulaPtr Formula::atom_mul(TermPtr s, TermPtr t, TermPtr u) {
  auto f = mk_mut(FormulaTag::Atom);
  f->atom = AtomTag::M;
  f->args = {std::move(s), std::move(t), std::move(u)};
  return f;
}

FormulaPtr Formula::bot() {
  static const FormulaPtr b = mk_mut(FormulaTag::Bot);
  return b;
}

FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  if (!l || !r) throw FormError("conj of null formula");
  auto f = mk_mut(FormulaTag::And);
  f->l = std::move(l);
  f->r = std::move(r);
  return f;
}

FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  if (!l || !r) throw FormError("disj of null formula");
  auto f = mk_mut(FormulaTag::Or);
  f->l = std::move(l);
  f->r = std::move(r);
  return f;
}

FormulaPtr Formula::imp(FormulaPtr l, FormulaPtr r) {
  if (!l || !r) throw FormError("imp of null formula");
  auto f = mk_mut(FormulaTag::Imp);
  f->l = std::move(l);
  f->r = std::move(r);
  return f;
}

FormulaPtr Formula::neg(FormulaPtr f) { return imp(std::move(f), bot()); }

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
  return conj(imp(a, b), imp(b, a));
}

FormulaPtr Formula::forall(const std::string& x, FormulaPtr body) {
  if (!valid_var_name(x)) throw FormError("invalid binder name '" + x + "'");
  if (!body) throw FormError("forall of null body");
  auto f = mk_mut(FormulaTag::Forall);
  f->var = x;
  f->l = std::move(body);
  return f;
}

FormulaPtr Formula::exists(const std::string& x, FormulaPtr body) {
  if (!valid_var_name(x)) throw FormError("invalid binder name '" + x + "'");
  if (!body) throw FormError("exists of null body");
  auto f = mk_mut(FormulaTag::Exists);
  f->var = x;
  f->l = std::move(body);
  return f;
}

FormulaPtr Formula::bforall(const std::string& x, TermPtr bound, FormulaPtr body) {
  if (!valid_var_name(x)) throw FormError("invalid binder name '" + x + "'");
  if (!bound || !body) throw FormError("bounded forall of null bound/body");
  if (term_mentions(bound, x))
    throw FormError("bound of binder '" + x + "' mentions the binder");
  auto f = mk_mut(FormulaTag::BForall);
  f->var = x;
  f->bound = std::move(bound);
  f->l = std::move(body);
  return f;
}

FormulaPtr Formula::bexists(const std::string& x, TermPtr bound, FormulaPtr body) {
  if (!valid_var_name(x)) throw FormError("invalid binder name '" + x + "'");
  if (!bound || !body) throw FormError("bounded exists of null bound/body");
  if (term_mentions(bound, x))
    throw FormError("bound of binder '" + x + "' mentions the binder");
  auto f = mk_mut(FormulaTag::BExists);
  f->var = x;
  f->bound = std::move(bound);
  f->l = std::move(body);
  return f;
}

bool is_neg(const FormulaPtr& f) {
  return f && f->tag == FormulaTag::Imp && f->r && f->r->tag == FormulaTag::Bot;
}

// ---------------------------------------------------------------------------
// Free variables and substitution
// ---------------------------------------------------------------------------

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f->tag) {
    case FormulaTag::Atom:
      for (const auto& t : f->args) {
        std::set<std::string> vs;
        collect_term_vars(t, vs);
        for (const auto& v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      return;
    case FormulaTag::Bot: return;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp:
      collect_free(f->l, bound, out);
      collect_free(f->r, bound, out);
      return;
    case FormulaTag::BForall:
    case FormulaTag::BExists: {
      std::set<std::string> vs;
      collect_term_vars(f->bound, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      [[fallthrough]];
    }
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      bool inserted = bound.insert(f->var).second;
      collect_free(f->l, bound, out);
      if (inserted) bound.erase(f->var);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool mentions_free(const FormulaPtr& f, const std::string& var) {
  switch (f->tag) {
    case FormulaTag::Atom:
      for (const auto& t : f->args)
        if (term_mentions(t, var)) return true;
      return false;
    case FormulaTag::Bot: return false;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp:
      return mentions_free(f->l, var) || mentions_free(f->r, var);
    case FormulaTag::BForall:
    case FormulaTag::BExists:
      if (term_mentions(f->bound, var)) return true;
      if (f->var == var) return false;
      return mentions_free(f->l, var);
    case FormulaTag::Forall:
    case FormulaTag::Exists:
      if (f->var == var) return false;
      return mentions_free(f->l, var);
  }
  return false;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& repl) {
  if (!mentions_free(f, var)) return f;
  switch (f->tag) {
    case FormulaTag::Atom: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& t : g->args) t = term_subst(t, var, repl);
      return g;
    }
    case FormulaTag::Bot: return f;
    case FormulaTag::And:
      return Formula::conj(substitute(f->l, var, repl), substitute(f->r, var, repl));
    case FormulaTag::Or:
      return Formula::disj(substitute(f->l, var, repl), substitute(f->r, var, repl));
    case FormulaTag::Imp:
      return Formula::imp(substitute(f->l, var, repl), substitute(f->r, var, repl));
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      // mentions_free was true, so var != f->var and var occurs in the body.
      if (term_mentions(repl, f->var))
        throw FormError("substitution for '" + var + "' would be captured by binder '" +
                        f->var + "'");
      auto body = substitute(f->l, var, repl);
      return f->tag == FormulaTag::Forall ? Formula::forall(f->var, body)
                                          : Formula::exists(f->var, body);
    }
    case FormulaTag::BForall:
    case FormulaTag::BExists: {
      TermPtr nb = term_subst(f->bound, var, repl);
      FormulaPtr body = f->l;
      if (f->var != var && mentions_free(f->l, var)) {
        if (term_mentions(repl, f->var))
          throw FormError("substitution for '" + var + "' would be captured by binder '" +
                          f->var + "'");
        body = substitute(f->l, var, repl);
      }
      return f->tag == FormulaTag::BForall ? Formula::bforall(f->var, nb, body)
                                           : Formula::bexists(f->var, nb, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Alpha equality
// ---------------------------------------------------------------------------

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool var_matches(const std::string& a, const std::string& b, const Env& env) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool la = it->first == a, lb = it->second == b;
    if (la || lb) return la && lb;
  }
  return a == b;  // both free
}

bool term_alpha(const TermPtr& a, const TermPtr& b, const Env& env) {
  if (!a || !b || a->tag != b->tag) return false;
  switch (a->tag) {
    case TermTag::Var: return var_matches(a->name, b->name, env);
    case TermTag::Zero: return true;
    case TermTag::Succ: return term_alpha(a->a, b->a, env);
    case TermTag::Plus:
    case TermTag::Times:
      return term_alpha(a->a, b->a, env) && term_alpha(a->b, b->b, env);
  }
  return false;
}

bool alpha(const FormulaPtr& a, const FormulaPtr& b, Env& env) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FormulaTag::Atom: {
      if (a->atom != b->atom || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_alpha(a->args[i], b->args[i], env)) return false;
      return true;
    }
    case FormulaTag::Bot: return true;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp:
      return alpha(a->l, b->l, env) && alpha(a->r, b->r, env);
    case FormulaTag::BForall:
    case FormulaTag::BExists:
      if (!term_alpha(a->bound, b->bound, env)) return false;
      [[fallthrough]];
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      env.emplace_back(a->var, b->var);
      bool ok = alpha(a->l, b->l, env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool term_alpha_equal(const TermPtr& a, const TermPtr& b,
                      const std::vector<std::pair<std::string, std::string>>& env) {
  return term_alpha(a, b, env);
}

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  Env env;
  return alpha(a, b, env);
}

// ---------------------------------------------------------------------------
// Bounded-quantifier expansion, kernel equality
// ---------------------------------------------------------------------------

FormulaPtr expand_bounded(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Atom:
    case FormulaTag::Bot: return f;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp: {
      FormulaPtr l = expand_bounded(f->l), r = expand_bounded(f->r);
      if (l == f->l && r == f->r) return f;
      if (f->tag == FormulaTag::And) return Formula::conj(l, r);
      if (f->tag == FormulaTag::Or) return Formula::disj(l, r);
      return Formula::imp(l, r);
    }
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      FormulaPtr body = expand_bounded(f->l);
      if (body == f->l) return f;
      return f->tag == FormulaTag::Forall ? Formula::forall(f->var, body)
                                          : Formula::exists(f->var, body);
    }
    case FormulaTag::BForall: {
      FormulaPtr body = expand_bounded(f->l);
      FormulaPtr guard = Formula::atom_le(Term::var(f->var), f->bound);
      return Formula::forall(f->var, Formula::disj(Formula::neg(guard), body));
    }
    case FormulaTag::BExists: {
      FormulaPtr body = expand_bounded(f->l);
      FormulaPtr guard = Formula::atom_le(Term::var(f->var), f->bound);
      return Formula::exists(f->var, Formula::conj(guard, body));
    }
  }
  return f;
}

bool kernel_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return alpha_equal(expand_bounded(a), expand_bounded(b));
}

// ---------------------------------------------------------------------------
// Vocabulary and classification
// ---------------------------------------------------------------------------

bool is_relational(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Atom:
      for (const auto& t : f->args)
        if (term_has_arith(t)) return false;
      return true;
    case FormulaTag::Bot: return true;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp: return is_relational(f->l) && is_relational(f->r);
    case FormulaTag::BForall:
    case FormulaTag::BExists:
      if (term_has_arith(f->bound)) return false;
      return is_relational(f->l);
    case FormulaTag::Forall:
    case FormulaTag::Exists: return is_relational(f->l);
  }
  return true;
}

bool is_classical(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Atom: return f->atom == AtomTag::Eq || f->atom == AtomTag::Le;
    case FormulaTag::Bot: return true;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp: return is_classical(f->l) && is_classical(f->r);
    case FormulaTag::BForall:
    case FormulaTag::BExists:
    case FormulaTag::Forall:
    case FormulaTag::Exists: return is_classical(f->l);
  }
  return true;
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

namespace {

bool quantifiers_all_bounded(const FormulaPtr& f) {
  switch (f->tag) {
    case FormulaTag::Atom:
    case FormulaTag::Bot: return true;
    case FormulaTag::And:
    case FormulaTag::Or:
    case FormulaTag::Imp:
      return quantifiers_all_bounded(f->l) && quantifiers_all_bounded(f->r);
    case FormulaTag::BForall:
    case FormulaTag::BExists: return quantifiers_all_bounded(f->l);
    case FormulaTag::Forall:
    case FormulaTag::Exists: return false;
  }
  return true;
}

}  // namespace

FormulaClass classify(const FormulaPtr& f) {
  if (quantifiers_all_bounded(f)) return FormulaClass::Delta0;
  if (f->tag == FormulaTag::Exists && quantifiers_all_bounded(f->l))
    return FormulaClass::Sigma1;
  return FormulaClass::Other;
}

// ---------------------------------------------------------------------------
// Hygiene
// ---------------------------------------------------------------------------

std::string fresh_var(const std::string& base, std::set<std::string>& used) {
  if (!used.count(base)) {
    used.insert(base);
    return base;
  }
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

namespace {

TermPtr rename_term(const TermPtr& t, const Env& env) {
  if (!t) return t;
  switch (t->tag) {
    case TermTag::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t->name) {
          if (it->second == t->name) return t;
          return Term::var(it->second);
        }
      return t;
    case TermTag::Zero: return t;
    case TermTag::Succ: return Term::succ(rename_term(t->a, env));
    case TermTag::Plus: return Term::plus(rename_term(t->a, env), rename_term(t->b, env));
    case TermTag::Times:
      return Term::times(rename_term(t->a, env), rename_term(t->b, env));
  }
  return t;
}

FormulaPtr hygienize_walk(const FormulaPtr& f, Env& env, std::set<std::string>& used) {
  switch (f->tag) {
    case FormulaTag::Atom: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& t : g->args) t = rename_term(t, env);
      return g;
    }
    case FormulaTag::Bot: return f;
    case FormulaTag::And:
      return Formula::conj(hygienize_walk(f->l, env, used), hygienize_walk(f->r, env, used));
    case FormulaTag::Or:
      return Formula::disj(hygienize_walk(f->l, env, used), hygienize_walk(f->r, env, used));
    case FormulaTag::Imp:
      return Formula::imp(hygienize_walk(f->l, env, used), hygienize_walk(f->r, env, used));
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      std::string nv = fresh_var(f->var, used);
      env.emplace_back(f->var, nv);
      FormulaPtr body = hygienize_walk(f->l, env, used);
      env.pop_back();
      return f->tag == FormulaTag::Forall ? Formula::forall(nv, body)
                                          : Formula::exists(nv, body);
    }
    case FormulaTag::BForall:
    case FormulaTag::BExists: {
      TermPtr nb = rename_term(f->bound, env);
      std::string nv = fresh_var(f->var, used);
      env.emplace_back(f->var, nv);
      FormulaPtr body = hygienize_walk(f->l, env, used);
      env.pop_back();
      return f->tag == FormulaTag::BForall ? Formula::bforall(nv, nb, body)
                                           : Formula::bexists(nv, nb, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr hygienize(const FormulaPtr& f) {
  std::set<std::string> used = free_vars(f);
  Env env;
  return hygienize_walk(f, env, used);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Term precedence: + is 1, * is 2, atoms/S/parens are 3.
void print_term(std::ostringstream& os, const TermPtr& t, int parent) {
  switch (t->tag) {
    case TermTag::Var: os << t->name; return;
    case TermTag::Zero: os << "0"; return;
    case TermTag::Succ:
      os << "S(";
      print_term(os, t->a, 0);
      os << ")";
      return;
    case TermTag::Plus: {
      if (parent > 1) os << "(";
      print_term(os, t->a, 1);
      os << " + ";
      print_term(os, t->b, 2);
      if (parent > 1) os << ")";
      return;
    }
    case TermTag::Times: {
      if (parent > 2) os << "(";
      print_term(os, t->a, 2);
      os << " * ";
      print_term(os, t->b, 3);
      if (parent > 2) os << ")";
      return;
    }
  }
}

// Formula precedence: quantifiers 0 (body extends right), -> 1 (right
// associative), | 2, & 3, ! 4, atoms 5.
void print_formula(std::ostringstream& os, const FormulaPtr& f, int parent) {
  if (is_neg(f)) {
    if (parent > 4) os << "(";
    os << "!";
    if (f->l->tag == FormulaTag::Atom) {
      os << "(";
      print_formula(os, f->l, 0);
      os << ")";
    } else {
      print_formula(os, f->l, 4);
    }
    if (parent > 4) os << ")";
    return;
  }
  switch (f->tag) {
    case FormulaTag::Atom: {
      if (f->atom == AtomTag::Eq || f->atom == AtomTag::Le) {
        print_term(os, f->args[0], 0);
        os << (f->atom == AtomTag::Eq ? " = " : " <= ");
        print_term(os, f->args[1], 0);
      } else {
        os << (f->atom == AtomTag::A ? "A(" : "M(");
        print_term(os, f->args[0], 0);
        os << ", ";
        print_term(os, f->args[1], 0);
        os << ", ";
        print_term(os, f->args[2], 0);
        os << ")";
      }
      return;
    }
    case FormulaTag::Bot: os << "bot"; return;
    case FormulaTag::Imp: {
      if (parent > 1) os << "(";
      print_formula(os, f->l, 2);
      os << " -> ";
      print_formula(os, f->r, 1);
      if (parent > 1) os << ")";
      return;
    }
    case FormulaTag::Or: {
      if (parent > 2) os << "(";
      print_formula(os, f->l, 2);
      os << " | ";
      print_formula(os, f->r, 3);
      if (parent > 2) os << ")";
      return;
    }
    case FormulaTag::And: {
      if (parent > 3) os << "(";
      print_formula(os, f->l, 3);
      os << " & ";
      print_formula(os, f->r, 4);
      if (parent > 3) os << ")";
      return;
    }
    case FormulaTag::Forall:
    case FormulaTag::Exists: {
      if (parent > 0) os << "(";
      os << (f->tag == FormulaTag::Forall ? "All " : "Ex ") << f->var << " . ";
      print_formula(os, f->l, 0);
      if (parent > 0) os << ")";
      return;
    }
    case FormulaTag::BForall:
    case FormulaTag::BExists: {
      if (parent > 0) os << "(";
      os << (f->tag == FormulaTag::BForall ? "All " : "Ex ") << f->var << " <= ";
      print_term(os, f->bound, 0);
      os << " . ";
      print_formula(os, f->l, 0);
      if (parent > 0) os << ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kNumeralCap = 1000000;

enum class Tok {
  LParen, RParen, Comma, Dot, Eq, Le, Amp, Pipe, Arrow, Bang, Plus, Star,
  KwAll, KwEx, KwS, KwA, KwM, KwBot, Ident, Number, End
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t num = 0;
  std::size_t pos = 0;
};

[[noreturn]] void lex_fail(std::size_t pos, const std::string& msg) {
  throw SyntaxError("at position " + std::to_string(pos) + ": " + msg);
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '(') { out.push_back({Tok::LParen, "(", 0, start}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::RParen, ")", 0, start}); ++i; continue; }
    if (c == ',') { out.push_back({Tok::Comma, ",", 0, start}); ++i; continue; }
    if (c == '.') { out.push_back({Tok::Dot, ".", 0, start}); ++i; continue; }
    if (c == '=') { out.push_back({Tok::Eq, "=", 0, start}); ++i; continue; }
    if (c == '&') { out.push_back({Tok::Amp, "&", 0, start}); ++i; continue; }
    if (c == '|') { out.push_back({Tok::Pipe, "|", 0, start}); ++i; continue; }
    if (c == '!') { out.push_back({Tok::Bang, "!", 0, start}); ++i; continue; }
    if (c == '+') { out.push_back({Tok::Plus, "+", 0, start}); ++i; continue; }
    if (c == '*') { out.push_back({Tok::Star, "*", 0, start}); ++i; continue; }
    if (c == '<') {
      if (i + 1 < s.size() && s[i + 1] == '=') {
        out.push_back({Tok::Le, "<=", 0, start});
        i += 2;
        continue;
      }
      lex_fail(start, "expected '<=' after '<'");
    }
    if (c == '-') {
      if (i + 1 < s.size() && s[i + 1] == '>') {
        out.push_back({Tok::Arrow, "->", 0, start});
        i += 2;
        continue;
      }
      lex_fail(start, "expected '->' after '-'");
    }
    if (c >= '0' && c <= '9') {
      std::uint64_t v = 0;
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (v > kNumeralCap) lex_fail(start, "numeral literal exceeds 1000000");
        ++i;
      }
      out.push_back({Tok::Number, s.substr(start, i - start), v, start});
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      while (i < s.size() &&
             ((s[i] >= 'a' && s[i] <= 'z') || (s[i] >= 'A' && s[i] <= 'Z') ||
              (s[i] >= '0' && s[i] <= '9') || s[i] == '_')) {
        ++i;
      }
      std::string w = s.substr(start, i - start);
      if (w == "All") out.push_back({Tok::KwAll, w, 0, start});
      else if (w == "Ex") out.push_back({Tok::KwEx, w, 0, start});
      else if (w == "S") out.push_back({Tok::KwS, w, 0, start});
      else if (w == "A") out.push_back({Tok::KwA, w, 0, start});
      else if (w == "M") out.push_back({Tok::KwM, w, 0, start});
      else if (w == "bot") out.push_back({Tok::KwBot, w, 0, start});
      else if (valid_var_name(w)) out.push_back({Tok::Ident, w, 0, start});
      else lex_fail(start, "invalid identifier '" + w + "'");
      continue;
    }
    lex_fail(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", 0, s.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  ParseMode mode;

  const Token& peek() const { return toks[pos]; }
  const Token& get() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string shown = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError("at position " + std::to_string(t.pos) + ": " + msg +
                      " (found " + shown + ")");
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    ++pos;
  }

  bool arith() const { return mode == ParseMode::Classical; }

  TermPtr parse_term() {
    if (!arith()) return parse_primary();
    TermPtr t = parse_mul();
    while (peek().kind == Tok::Plus) {
      ++pos;
      t = Term::plus(t, parse_mul());
    }
    return t;
  }

  TermPtr parse_mul() {
    TermPtr t = parse_primary();
    while (peek().kind == Tok::Star) {
      ++pos;
      t = Term::times(t, parse_primary());
    }
    return t;
  }

  TermPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        ++pos;
        return Term::numeral(t.num);
      }
      case Tok::Ident: {
        ++pos;
        return Term::var(t.text);
      }
      case Tok::KwS: {
        ++pos;
        expect(Tok::LParen, "'(' after S");
        TermPtr inner = parse_term();
        expect(Tok::RParen, "')'");
        return Term::succ(inner);
      }
      case Tok::LParen: {
        ++pos;
        TermPtr inner = parse_term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: fail("expected a term");
    }
  }

  // Finds the index just past the parenthesized group starting at `from`
  // (toks[from] must be LParen); returns npos on imbalance.
  std::size_t skip_group(std::size_t from) const {
    int depth = 0;
    for (std::size_t j = from; toks[j].kind != Tok::End; ++j) {
      if (toks[j].kind == Tok::LParen) ++depth;
      if (toks[j].kind == Tok::RParen) {
        --depth;
        if (depth == 0) return j + 1;
        if (depth < 0) return std::string::npos;
      }
    }
    return std::string::npos;
  }

  // After a complete term at an atom position, '=' or '<=' must follow.
  FormulaPtr parse_comparison() {
    TermPtr lhs = parse_term();
    if (peek().kind == Tok::Eq) {
      ++pos;
      return Formula::atom_eq(lhs, parse_term());
    }
    if (peek().kind == Tok::Le) {
      ++pos;
      return Formula::atom_le(lhs, parse_term());
    }
    fail("expected '=' or '<=' after term");
  }

  FormulaPtr parse_atom_or_paren() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwBot:
        ++pos;
        return Formula::bot();
      case Tok::KwA:
      case Tok::KwM: {
        if (mode == ParseMode::Classical)
          fail("relational atom not allowed in classical grammar");
        bool is_a = t.kind == Tok::KwA;
        ++pos;
        expect(Tok::LParen, "'('");
        TermPtr x = parse_term();
        expect(Tok::Comma, "','");
        TermPtr y = parse_term();
        expect(Tok::Comma, "','");
        TermPtr z = parse_term();
        expect(Tok::RParen, "')'");
        return is_a ? Formula::atom_add(x, y, z) : Formula::atom_mul(x, y, z);
      }
      case Tok::LParen: {
        // Could open a parenthesized formula or a parenthesized term inside a
        // comparison; decide by the token after the matching ')'.
        std::size_t after = skip_group(pos);
        if (after == std::string::npos) fail("unbalanced '('");
        Tok next = toks[after].kind;
        if (next == Tok::Eq || next == Tok::Le || next == Tok::Plus || next == Tok::Star)
          return parse_comparison();
        ++pos;
        FormulaPtr inner = parse_formula();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Number:
      case Tok::Ident:
      case Tok::KwS:
        return parse_comparison();
      default: fail("expected a formula");
    }
  }

  FormulaPtr parse_quantified() {
    bool universal = peek().kind == Tok::KwAll;
    ++pos;
    if (peek().kind != Tok::Ident) fail("expected a variable after quantifier");
    std::string x = get().text;
    TermPtr bound;
    if (peek().kind == Tok::Le) {
      std::size_t bound_pos = peek().pos;
      ++pos;
      bound = parse_term();
      if (term_mentions(bound, x))
        throw SyntaxError("at position " + std::to_string(bound_pos) + ": bound of '" +
                          x + "' mentions the binder");
    }
    expect(Tok::Dot, "'.' after quantifier binder");
    FormulaPtr body = parse_formula();
    if (universal)
      return bound ? Formula::bforall(x, bound, body) : Formula::forall(x, body);
    return bound ? Formula::bexists(x, bound, body) : Formula::exists(x, body);
  }

  FormulaPtr parse_unary() {
    switch (peek().kind) {
      case Tok::Bang: {
        ++pos;
        return Formula::neg(parse_unary());
      }
      case Tok::KwAll:
      case Tok::KwEx:
        return parse_quantified();
      default:
        return parse_atom_or_paren();
    }
  }

  FormulaPtr parse_conj() {
    FormulaPtr f = parse_unary();
    while (peek().kind == Tok::Amp) {
      ++pos;
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  FormulaPtr parse_disj() {
    FormulaPtr f = parse_conj();
    while (peek().kind == Tok::Pipe) {
      ++pos;
      f = Formula::disj(f, parse_conj());
    }
    return f;
  }

  FormulaPtr parse_formula() {
    FormulaPtr f = parse_disj();
    if (peek().kind == Tok::Arrow) {
      ++pos;
      return Formula::imp(f, parse_formula());
    }
    return f;
  }
};

}  // namespace

TermPtr parse_term(const std::string& text, ParseMode mode) {
  std::vector<Token> toks = lex(text);
  Parser p{toks, 0, mode};
  TermPtr t = p.parse_term();
  if (p.peek().kind != Tok::End) p.fail("unexpected trailing input");
  return t;
}

FormulaPtr parse_formula(const std::string& text, ParseMode mode) {
  std::vector<Token> toks = lex(text);
  Parser p{toks, 0, mode};
  FormulaPtr f = p.parse_formula();
  if (p.peek().kind != Tok::End) p.fail("unexpected trailing input");
  return hygienize(f);
}

}  // namespace relic
