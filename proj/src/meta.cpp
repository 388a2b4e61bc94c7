#include "relic/meta.hpp"

#include <initializer_list>
#include <utility>

#include "relic/theories.hpp"

namespace relic {

namespace {

TermPtr N(std::uint64_t n) { return Term::numeral(n); }
TermPtr V(const std::string& s) { return Term::var(s); }
TermPtr S1(TermPtr t) { return Term::succ(std::move(t)); }

[[noreturn]] void die(const std::string& msg) { throw CheckError("derive: " + msg); }

Binding BF(FormulaPtr f) { return Binding::of_formula(std::move(f)); }
Binding BT(TermPtr t) { return Binding::of_term(std::move(t)); }
Binding BV(std::string v) { return Binding::of_var(std::move(v)); }

// Splits a conjunction theorem into one of its halves.
std::size_t half(ScriptBuilder& b, std::size_t i, bool left) {
  FormulaPtr c = b.conc_x(i);
  if (c->tag != FormulaTag::And) die("expected a conjunction to split");
  std::size_t ax =
      b.axiom(left ? "and-elim-l" : "and-elim-r", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
  return b.mp(i, ax);
}

// instantiate() demands that no substituted term mention a schema variable
// replaced later in the list; greedily reorder the pairs so that holds.
std::size_t inst_ordered(ScriptBuilder& b, std::size_t i,
                         std::vector<std::pair<std::string, TermPtr>> subs) {
  std::vector<std::pair<std::string, TermPtr>> order;
  while (!subs.empty()) {
    std::size_t pick = subs.size();
    for (std::size_t k = 0; k < subs.size() && pick == subs.size(); ++k) {
      bool ok = true;
      for (std::size_t l = 0; l < subs.size(); ++l)
        if (l != k && term_mentions(subs[k].second, subs[l].first)) ok = false;
      if (ok) pick = k;
    }
    if (pick == subs.size()) die("cyclic schema instantiation");
    order.push_back(std::move(subs[pick]));
    subs.erase(subs.begin() + pick);
  }
  return b.instantiate(i, order);
}

std::size_t theory_inst(ScriptBuilder& b, const std::string& name,
                        std::vector<std::uint64_t> params,
                        std::vector<std::pair<std::string, TermPtr>> subs) {
  return inst_ordered(b, b.theory_step(name, std::move(params)), std::move(subs));
}

std::size_t theory_half_inst(ScriptBuilder& b, const std::string& name, bool left,
                             std::vector<std::pair<std::string, TermPtr>> subs) {
  return inst_ordered(b, half(b, b.theory_step(name), left), std::move(subs));
}

std::string fresh_name(const char* base, std::initializer_list<TermPtr> terms,
                       std::initializer_list<const char*> avoid) {
  for (int k = 0;; ++k) {
    std::string cand = k == 0 ? std::string(base) : std::string(base) + std::to_string(k);
    bool bad = false;
    for (const auto& t : terms)
      if (t && term_mentions(t, cand)) bad = true;
    for (const auto& a : avoid)
      if (cand == a) bad = true;
    if (!bad) return cand;
  }
}

void require_clean(const TermPtr& t, const char* who) {
  // 'z' is the bound variable of the order axiom and 'u' that of the
  // recursion axioms; a parameter mentioning them would be captured.
  if (term_mentions(t, "z") || term_mentions(t, "u"))
    die(std::string(who) + ": term parameters must not mention 'z' or 'u'");
}

// p<=q -> Ex z A(z,p,q)
std::size_t le_unfold(ScriptBuilder& b, const TermPtr& p, const TermPtr& q) {
  return theory_half_inst(b, "Q~8", true, {{"x", p}, {"y", q}});
}

// Ex z A(z,p,q) -> p<=q
std::size_t le_fold(ScriptBuilder& b, const TermPtr& p, const TermPtr& q) {
  return theory_half_inst(b, "Q~8", false, {{"x", p}, {"y", q}});
}

// |- t<=n  for a closed fact A(n-k, k, n); t is the numeral of k.
std::size_t le_numeral_fact(ScriptBuilder& b, std::uint64_t k, std::uint64_t n) {
  std::size_t af = derive_add_fact(b, n - k, k);
  std::size_t exi = b.ex_intro(af, "z", Formula::atom_add(V("z"), N(k), N(n)), N(n - k));
  std::size_t q8f = le_fold(b, N(k), N(n));
  return b.mp(exi, q8f);
}

// x=0 | x=1 | ... | x=n, left-nested, over the given term.
FormulaPtr disj_upto(std::uint64_t n, const TermPtr& x) {
  FormulaPtr d = Formula::atom_eq(x, N(0));
  for (std::uint64_t k = 1; k <= n; ++k) d = Formula::disj(d, Formula::atom_eq(x, N(k)));
  return d;
}

// A(m,n,x) -> (m+n)=x, with free variable x, by iterating the successor
// unfolding of addition n times from the zero case.
std::size_t r1_ltr(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::size_t cur = theory_half_inst(b, "Q~4", true, {{"x", N(m)}, {"y", V("x")}});
  // cur: A(m,0,x) -> m=x
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::size_t ih = b.instantiate(cur, {{"x", V("u")}});  // A(m,k-1,u) -> (m+k-1)=u
    FormulaPtr c = Formula::conj(Formula::atom_add(N(m), N(k - 1), V("u")),
                                 Formula::atom_eq(V("x"), S1(V("u"))));
    std::size_t el = b.axiom("and-elim-l", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
    std::size_t l1 = b.trans(el, ih);  // c -> (m+k-1)=u
    std::size_t ec = b.axiom("eq-com", {{"s", BT(N(m + k - 1))}, {"t", BT(V("u"))}});
    std::size_t l2 = b.trans(l1, ec);  // c -> u=(m+k-1)
    std::size_t er = b.axiom("and-elim-r", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
    std::size_t pr = b.and_intro(l2, er);  // c -> u=(m+k-1) & x=S(u)
    std::size_t ep = derive_eq_transfer_conj(b, V("u"), N(m + k - 1), "v",
                                             Formula::atom_eq(V("x"), S1(V("v"))));
    std::size_t l3 = b.trans(pr, ep);  // c -> x=(m+k)
    std::size_t ex = b.axiom("eq-com", {{"s", BT(V("x"))}, {"t", BT(N(m + k))}});
    std::size_t l4 = b.trans(l3, ex);   // c -> (m+k)=x
    std::size_t l5 = b.ex_elim(l4, "u");  // Ex u c -> (m+k)=x
    std::size_t q5 =
        theory_half_inst(b, "Q~5", true, {{"x", N(m)}, {"y", N(k - 1)}, {"z", V("x")}});
    cur = b.trans(q5, l5);  // A(m,k,x) -> (m+k)=x
  }
  return cur;
}

// (m+n)=x -> A(m,n,x), from the closed fact at the numeral.
std::size_t r1_rtl(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::size_t f = derive_add_fact(b, m, n);
  std::size_t ai = b.aux_imp(f, "x", Formula::atom_add(N(m), N(n), V("x")), N(m + n));
  std::size_t ec = b.axiom("eq-com", {{"s", BT(N(m + n))}, {"t", BT(V("x"))}});
  return b.trans(ec, ai);
}

// M(m,n,x) -> (m*n)=x, iterating the successor unfolding of multiplication
// and splicing in the addition direction at each stage.
std::size_t r2_ltr(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::size_t base = theory_half_inst(b, "Q~6", true, {{"x", N(m)}, {"y", V("x")}});
  std::size_t ec0 = b.axiom("eq-com", {{"s", BT(V("x"))}, {"t", BT(N(0))}});
  std::size_t cur = b.trans(base, ec0);  // M(m,0,x) -> 0=x
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::size_t ih = b.instantiate(cur, {{"x", V("u")}});  // M(m,k-1,u) -> m(k-1)=u
    FormulaPtr c = Formula::conj(Formula::atom_mul(N(m), N(k - 1), V("u")),
                                 Formula::atom_add(V("u"), N(m), V("x")));
    std::size_t el = b.axiom("and-elim-l", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
    std::size_t l1 = b.trans(el, ih);
    std::size_t ec = b.axiom("eq-com", {{"s", BT(N(m * (k - 1)))}, {"t", BT(V("u"))}});
    std::size_t l2 = b.trans(l1, ec);  // c -> u=m(k-1)
    std::size_t er = b.axiom("and-elim-r", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
    std::size_t pr = b.and_intro(l2, er);  // c -> u=m(k-1) & A(u,m,x)
    std::size_t ep = derive_eq_transfer_conj(b, V("u"), N(m * (k - 1)), "v",
                                             Formula::atom_add(V("v"), N(m), V("x")));
    std::size_t l3 = b.trans(pr, ep);  // c -> A(m(k-1),m,x)
    std::size_t r1 = r1_ltr(b, m * (k - 1), m);
    std::size_t l4 = b.trans(l3, r1);   // c -> (mk)=x
    std::size_t l5 = b.ex_elim(l4, "u");  // Ex u c -> (mk)=x
    std::size_t q7 = theory_inst(b, "Q~7a", {}, {{"x", N(m)}, {"y", N(k - 1)}, {"z", V("x")}});
    cur = b.trans(q7, l5);  // M(m,k,x) -> (mk)=x
  }
  return cur;
}

std::size_t r2_rtl(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::size_t f = derive_mul_fact(b, m, n);
  std::size_t ai = b.aux_imp(f, "x", Formula::atom_mul(N(m), N(n), V("x")), N(m * n));
  std::size_t ec = b.axiom("eq-com", {{"s", BT(N(m * n))}, {"t", BT(V("x"))}});
  return b.trans(ec, ai);
}

// m=n -> bot for distinct numerals: strip common successors, then refute
// S(...)=0.
std::size_t r3(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::uint64_t a = m > n ? m : n;
  std::uint64_t c = m > n ? n : m;
  bool have = false;
  std::size_t cur = 0;
  for (std::uint64_t i = 0; i < c; ++i) {
    std::size_t q2 = theory_inst(b, "Q~2", {}, {{"x", N(a - 1 - i)}, {"y", N(c - 1 - i)}});
    cur = have ? b.trans(cur, q2) : q2;
    have = true;
  }
  std::size_t q1 = theory_inst(b, "Q~1", {}, {{"x", N(a - c - 1)}});  // (a-c)=0 -> bot
  std::size_t full = have ? b.trans(cur, q1) : q1;                    // a=c -> bot
  if (m < n) {
    std::size_t ec = b.axiom("eq-com", {{"s", BT(N(m))}, {"t", BT(N(n))}});
    full = b.trans(ec, full);
  }
  return full;
}

// x<=n -> (x=0 | ... | x=n) by case analysis per numeral stage.
std::size_t r4_ltr(ScriptBuilder& b, std::uint64_t n) {
  // Stage 0: x<=0 -> x=0.
  std::size_t e0 = b.axiom("eq-id", {{"t", BT(N(0))}});
  std::size_t z0 = b.weaken(e0, Formula::atom_le(N(0), N(0)));  // 0<=0 -> 0=0
  // Successor side: S(y)<=0 -> S(y)=0, from the refutation of A(z,S(y),0).
  std::size_t q1 = theory_inst(b, "Q~1", {}, {{"x", V("u")}});  // S(u)=0 -> bot
  std::size_t ec = b.axiom("eq-com", {{"s", BT(N(0))}, {"t", BT(S1(V("u")))}});
  std::size_t nz = b.trans(ec, q1);  // 0=S(u) -> bot
  FormulaPtr cz = Formula::conj(Formula::atom_add(V("z"), V("y"), V("u")),
                                Formula::atom_eq(N(0), S1(V("u"))));
  std::size_t er = b.axiom("and-elim-r", {{"phi", BF(cz->l)}, {"psi", BF(cz->r)}});
  std::size_t cb = b.trans(er, nz);    // cz -> bot
  std::size_t eeu = b.ex_elim(cb, "u");  // Ex u cz -> bot
  std::size_t q5 = theory_half_inst(b, "Q~5", true, {{"x", V("z")}, {"y", V("y")}, {"z", N(0)}});
  std::size_t na = b.trans(q5, eeu);  // A(z,S(y),0) -> bot
  FormulaPtr asz = Formula::atom_add(V("z"), S1(V("y")), N(0));
  std::size_t rd = b.red(asz, Formula::atom_eq(S1(V("y")), N(0)));
  std::size_t im = b.mp(na, rd);        // A(z,S(y),0) -> S(y)=0
  std::size_t eez = b.ex_elim(im, "z");   // Ex z A(z,S(y),0) -> S(y)=0
  std::size_t q8 = le_unfold(b, S1(V("y")), N(0));
  std::size_t s0 = b.trans(q8, eez);  // S(y)<=0 -> S(y)=0
  FormulaPtr psi0 =
      Formula::imp(Formula::atom_le(V("x"), N(0)), Formula::atom_eq(V("x"), N(0)));
  std::size_t cur = derive_case_split(b, z0, s0, "x", "y", psi0);
  // Stage k from stage k-1.
  for (std::uint64_t k = 1; k <= n; ++k) {
    FormulaPtr dk = disj_upto(k, V("x"));
    FormulaPtr psik = Formula::imp(Formula::atom_le(V("x"), N(k)), dk);
    // Zero case: 0<=k -> dk[x:=0], discarding the antecedent.
    FormulaPtr d0 = substitute(dk, "x", N(0));
    std::size_t ii = b.imp_into_disjunction(d0, Formula::atom_eq(N(0), N(0)));
    std::size_t ez = b.axiom("eq-id", {{"t", BT(N(0))}});
    std::size_t m0 = b.mp(ez, ii);
    std::size_t az = b.weaken(m0, Formula::atom_le(N(0), N(k)));
    // Successor case: shift down, apply the previous stage, lift each
    // disjunct through the successor.
    std::size_t c1 = derive_le_succ_elim(b, V("y"), N(k - 1));  // S(y)<=k -> y<=k-1
    std::size_t ihy = b.instantiate(cur, {{"x", V("y")}});
    std::size_t c2 = b.trans(c1, ihy);  // S(y)<=k -> d(k-1)[y]
    FormulaPtr dks = substitute(dk, "x", S1(V("y")));
    std::vector<std::size_t> lifts;
    for (std::uint64_t j = 0; j < k; ++j) {
      std::size_t ept = b.axiom("eqprin-term", {{"s", BT(V("y"))},
                                                {"t", BT(N(j))},
                                                {"x", BV("v")},
                                                {"u", BT(S1(V("v")))}});
      // ept: y=j -> S(y)=S(j)
      std::size_t i2 = b.imp_into_disjunction(dks, Formula::atom_eq(S1(V("y")), N(j + 1)));
      lifts.push_back(b.trans(ept, i2));
    }
    std::size_t lift = b.fold_or_elim(lifts);  // d(k-1)[y] -> dk[S(y)]
    std::size_t c3 = b.trans(c2, lift);        // S(y)<=k -> dk[S(y)]
    cur = derive_case_split(b, az, c3, "x", "y", psik);
  }
  return cur;
}

// (x=0 | ... | x=n) -> x<=n, one closed order fact per disjunct.
std::size_t r4_rtl(ScriptBuilder& b, std::uint64_t n) {
  std::vector<std::size_t> cases;
  for (std::uint64_t k = 0; k <= n; ++k) {
    std::size_t lf = le_numeral_fact(b, k, n);  // k<=n
    cases.push_back(b.aux_imp(lf, "x", Formula::atom_le(V("x"), N(n)), N(k)));
  }
  return b.fold_or_elim(cases);
}

// x<=n | n<=x by shifting the zero case upward through successors.
std::size_t r5(ScriptBuilder& b, std::uint64_t n) {
  std::size_t q4 = theory_half_inst(b, "Q~4", false, {{"x", V("x")}, {"y", V("x")}});
  std::size_t e = b.axiom("eq-id", {{"t", BT(V("x"))}});
  std::size_t f0 = b.mp(e, q4);  // A(x,0,x)
  std::size_t exi = b.ex_intro(f0, "z", Formula::atom_add(V("z"), N(0), V("x")), V("x"));
  std::size_t q8 = le_fold(b, N(0), V("x"));
  std::size_t lf = b.mp(exi, q8);  // 0<=x
  std::size_t oi = b.axiom("or-intro-r", {{"phi", BF(Formula::atom_le(V("x"), N(0)))},
                                          {"psi", BF(Formula::atom_le(N(0), V("x")))}});
  std::size_t cur = b.mp(lf, oi);  // x<=0 | 0<=x
  for (std::uint64_t k = 1; k <= n; ++k) {
    FormulaPtr left = Formula::atom_le(V("x"), N(k));
    FormulaPtr right = Formula::atom_le(N(k), V("x"));
    FormulaPtr psik = Formula::disj(left, right);
    // Zero case: 0<=k.
    std::size_t l0 = le_numeral_fact(b, 0, k);
    std::size_t oiL = b.axiom("or-intro-l", {{"phi", BF(Formula::atom_le(N(0), N(k)))},
                                             {"psi", BF(Formula::atom_le(N(k), N(0)))}});
    std::size_t z0 = b.mp(l0, oiL);
    // Successor case: shift both disjuncts of the previous stage.
    std::size_t ihy = b.instantiate(cur, {{"x", V("y")}});  // y<=k-1 | k-1<=y
    FormulaPtr leftS = Formula::atom_le(S1(V("y")), N(k));
    FormulaPtr rightS = Formula::atom_le(N(k), S1(V("y")));
    std::size_t f1 = derive_le_succ_intro(b, V("y"), N(k - 1));  // y<=k-1 -> S(y)<=k
    std::size_t o1 = b.axiom("or-intro-l", {{"phi", BF(leftS)}, {"psi", BF(rightS)}});
    std::size_t b1 = b.trans(f1, o1);
    std::size_t f2 = derive_le_succ_intro(b, N(k - 1), V("y"));  // k-1<=y -> k<=S(y)
    std::size_t o2 = b.axiom("or-intro-r", {{"phi", BF(leftS)}, {"psi", BF(rightS)}});
    std::size_t b2 = b.trans(f2, o2);
    std::size_t oe = b.or_elim(b1, b2);
    std::size_t sy = b.mp(ihy, oe);  // psik[x:=S(y)]
    cur = derive_case_split(b, z0, sy, "x", "y", psik);
  }
  return cur;
}

// x<=n | !(x<=n): every equation with a numeral is crisp, the bounded
// disjunction of them is therefore crisp, and crispness transfers along the
// order equivalence.
std::size_t r6(ScriptBuilder& b, std::uint64_t n) {
  std::size_t cert = theory_inst(b, "Q~0", {}, {{"x", V("x")}, {"y", N(0)}});
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::size_t ck = theory_inst(b, "Q~0", {}, {{"x", V("x")}, {"y", N(k)}});
    cert = b.crisp_or(cert, ck);
  }
  std::size_t ltr = r4_ltr(b, n);
  std::size_t rtl = r4_rtl(b, n);
  FormulaPtr le = Formula::atom_le(V("x"), N(n));
  std::size_t oiL = b.axiom("or-intro-l", {{"phi", BF(le)}, {"psi", BF(Formula::neg(le))}});
  std::size_t b1 = b.trans(rtl, oiL);  // d -> x<=n | !(x<=n)
  std::size_t cp = b.contrapose(ltr);  // !d -> !(x<=n)
  std::size_t oiR = b.axiom("or-intro-r", {{"phi", BF(le)}, {"psi", BF(Formula::neg(le))}});
  std::size_t b2 = b.trans(cp, oiR);
  std::size_t oe = b.or_elim(b1, b2);
  return b.mp(cert, oe);
}

}  // namespace

std::size_t derive_le_succ_intro(ScriptBuilder& b, const TermPtr& p, const TermPtr& q) {
  require_clean(p, "le-succ-intro");
  require_clean(q, "le-succ-intro");
  std::string w = fresh_name("w", {p, q}, {"x", "y", "z", "u"});
  FormulaPtr apq = Formula::atom_add(V(w), p, q);
  std::size_t idz = b.identity(apq);
  std::size_t e = b.axiom("eq-id", {{"t", BT(S1(q))}});
  std::size_t we = b.weaken(e, apq);      // A(w,p,q) -> S(q)=S(q)
  std::size_t pr = b.and_intro(idz, we);  // A(w,p,q) -> A(w,p,q) & S(q)=S(q)
  FormulaPtr body = Formula::conj(Formula::atom_add(V(w), p, V("u")),
                                  Formula::atom_eq(S1(q), S1(V("u"))));
  std::size_t exi = b.axiom("exists-intro", {{"x", BV("u")}, {"phi", BF(body)}, {"t", BT(q)}});
  std::size_t toex = b.trans(pr, exi);  // A(w,p,q) -> Ex u (A(w,p,u) & S(q)=S(u))
  std::size_t q5 = theory_half_inst(b, "Q~5", false, {{"x", V(w)}, {"y", p}, {"z", S1(q)}});
  std::size_t core = b.trans(toex, q5);  // A(w,p,q) -> A(w,S(p),S(q))
  FormulaPtr at = Formula::atom_add(V(w), S1(p), S1(q));
  std::size_t cls = b.axiom("exists-intro", {{"x", BV(w)}, {"phi", BF(at)}, {"t", BT(V(w))}});
  std::size_t up = b.trans(core, cls);  // A(w,p,q) -> Ex w A(w,S(p),S(q))
  std::size_t fold = le_fold(b, S1(p), S1(q));
  std::size_t to_le = b.trans(up, fold);  // A(w,p,q) -> S(p)<=S(q)
  std::size_t ee = b.ex_elim(to_le, w);   // Ex w A(w,p,q) -> S(p)<=S(q)
  std::size_t unf = le_unfold(b, p, q);
  return b.trans(unf, ee);
}

std::size_t derive_le_succ_elim(ScriptBuilder& b, const TermPtr& p, const TermPtr& q) {
  require_clean(p, "le-succ-elim");
  require_clean(q, "le-succ-elim");
  std::string w = fresh_name("w", {p, q}, {"x", "y", "z", "u"});
  std::string v = fresh_name("v", {p, q}, {"x", "y", "z", "u", w.c_str()});
  std::size_t q5 = theory_half_inst(b, "Q~5", true, {{"x", V(w)}, {"y", p}, {"z", S1(q)}});
  // q5: A(w,S(p),S(q)) -> Ex u (A(w,p,u) & S(q)=S(u))
  FormulaPtr c = Formula::conj(Formula::atom_add(V(w), p, V("u")),
                               Formula::atom_eq(S1(q), S1(V("u"))));
  std::size_t el = b.axiom("and-elim-l", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
  std::size_t er = b.axiom("and-elim-r", {{"phi", BF(c->l)}, {"psi", BF(c->r)}});
  std::size_t q2 = theory_inst(b, "Q~2", {}, {{"x", q}, {"y", V("u")}});  // S(q)=S(u) -> q=u
  std::size_t l1 = b.trans(er, q2);  // c -> q=u
  std::size_t ec = b.axiom("eq-com", {{"s", BT(q)}, {"t", BT(V("u"))}});
  std::size_t l2 = b.trans(l1, ec);      // c -> u=q
  std::size_t pr = b.and_intro(l2, el);  // c -> u=q & A(w,p,u)
  std::size_t ep = derive_eq_transfer_conj(b, V("u"), q, v, Formula::atom_add(V(w), p, V(v)));
  std::size_t l3 = b.trans(pr, ep);     // c -> A(w,p,q)
  std::size_t ee = b.ex_elim(l3, "u");    // Ex u c -> A(w,p,q)
  std::size_t core = b.trans(q5, ee);   // A(w,S(p),S(q)) -> A(w,p,q)
  FormulaPtr at = Formula::atom_add(V(w), p, q);
  std::size_t cls = b.axiom("exists-intro", {{"x", BV(w)}, {"phi", BF(at)}, {"t", BT(V(w))}});
  std::size_t up = b.trans(core, cls);  // A(w,S(p),S(q)) -> Ex w A(w,p,q)
  std::size_t fold = le_fold(b, p, q);
  std::size_t to_le = b.trans(up, fold);  // A(w,S(p),S(q)) -> p<=q
  std::size_t eew = b.ex_elim(to_le, w);  // Ex w A(w,S(p),S(q)) -> p<=q
  std::size_t unf = le_unfold(b, S1(p), S1(q));
  return b.trans(unf, eew);
}

std::size_t derive_case_split(ScriptBuilder& b, std::size_t at_zero, std::size_t at_succ,
                              const std::string& x, const std::string& y,
                              const FormulaPtr& phi) {
  if (x == y) die("case-split: the case variable and the witness must differ");
  if (x == "y") die("case-split: the case variable must not be named 'y'");
  if (mentions_free(phi, y)) die("case-split: the witness variable occurs in the statement");
  std::size_t a0 = b.aux_imp(at_zero, x, phi, N(0));     // x=0 -> phi
  std::size_t ay = b.aux_imp(at_succ, x, phi, S1(V(y)));  // x=S(y) -> phi
  std::size_t ee = b.ex_elim(ay, y);                      // Ex y (x=S(y)) -> phi
  std::size_t q3 = theory_inst(b, "Q~3", {}, {{"x", V(x)}});
  std::size_t ne = b.trans(q3, ee);  // !(x=0) -> phi
  std::size_t q0 = theory_inst(b, "Q~0", {}, {{"x", V(x)}, {"y", N(0)}});
  std::size_t oe = b.or_elim(a0, ne);  // (x=0 | !(x=0)) -> phi
  return b.mp(q0, oe);
}

std::size_t derive_eq_transfer_conj(ScriptBuilder& b, const TermPtr& s, const TermPtr& t,
                                    const std::string& x, const FormulaPtr& phi) {
  std::size_t cert = theory_inst(b, "Q~0", {}, {{"x", s}, {"y", t}});
  std::size_t imp =
      b.axiom("eqprin-formula", {{"s", BT(s)}, {"t", BT(t)}, {"x", BV(x)}, {"phi", BF(phi)}});
  return b.crisp_import(cert, imp);
}

std::size_t derive_add_fact(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::size_t e0 = b.axiom("eq-id", {{"t", BT(N(m))}});
  std::size_t q4 = theory_half_inst(b, "Q~4", false, {{"x", N(m)}, {"y", N(m)}});
  std::size_t cur = b.mp(e0, q4);  // A(m,0,m)
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::size_t e = b.axiom("eq-id", {{"t", BT(N(m + k))}});
    std::size_t pr = b.adjoin(cur, e);  // A(m,k-1,m+k-1) & (m+k)=(m+k)
    FormulaPtr body = Formula::conj(Formula::atom_add(N(m), N(k - 1), V("u")),
                                    Formula::atom_eq(N(m + k), S1(V("u"))));
    std::size_t exi = b.ex_intro(pr, "u", body, N(m + k - 1));
    std::size_t q5 =
        theory_half_inst(b, "Q~5", false, {{"x", N(m)}, {"y", N(k - 1)}, {"z", N(m + k)}});
    cur = b.mp(exi, q5);  // A(m,k,m+k)
  }
  return cur;
}

std::size_t derive_mul_fact(ScriptBuilder& b, std::uint64_t m, std::uint64_t n) {
  std::size_t e0 = b.axiom("eq-id", {{"t", BT(N(0))}});
  std::size_t q6 = theory_half_inst(b, "Q~6", false, {{"x", N(m)}, {"y", N(0)}});
  std::size_t cur = b.mp(e0, q6);  // M(m,0,0)
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::size_t q7 =
        theory_inst(b, "Q~7b", {m, k - 1}, {{"u", N(m * (k - 1))}, {"x", N(m * k)}});
    std::size_t s1 = b.mp(cur, q7);  // A(m(k-1),m,mk) -> M(m,k,mk)
    std::size_t af = derive_add_fact(b, m * (k - 1), m);
    cur = b.mp(af, s1);  // M(m,k,mk)
  }
  return cur;
}

ProofScript q_proves_r(const std::string& name, const std::vector<std::uint64_t>& params) {
  FormulaPtr target = theory_axiom(TheoryKind::R, name, params);
  for (std::uint64_t p : params)
    if (p > kDeriveParamCap)
      die("parameter " + std::to_string(p) + " exceeds the generator cap " +
          std::to_string(kDeriveParamCap));
  ScriptBuilder b(Profile::QSLw, TheoryKind::Q);
  std::size_t g;
  if (name == "R~1") {
    g = b.adjoin(r1_ltr(b, params[0], params[1]), r1_rtl(b, params[0], params[1]));
  } else if (name == "R~2") {
    g = b.adjoin(r2_ltr(b, params[0], params[1]), r2_rtl(b, params[0], params[1]));
  } else if (name == "R~3") {
    g = r3(b, params[0], params[1]);
  } else if (name == "R~4") {
    g = b.adjoin(r4_ltr(b, params[0]), r4_rtl(b, params[0]));
  } else if (name == "R~5") {
    g = r5(b, params[0]);
  } else {
    g = r6(b, params[0]);
  }
  if (!kernel_equal(b.conc(g), target)) die("internal: derivation missed its target");
  return b.take();
}

}  // namespace relic
