#include "relic/script_io.hpp"

#include <sstream>

#include "relic/theories.hpp"

namespace relic {

namespace {

constexpr std::uint64_t kParamCap = 1000000;

struct LineScanner {
  const std::string& s;
  std::size_t i = 0;
  int line_no;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ScriptFormatError("line " + std::to_string(line_no) + ": " + msg);
  }

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }

  bool at_end() {
    skip_ws();
    return i >= s.size();
  }

  bool try_lit(const std::string& lit) {
    skip_ws();
    if (s.compare(i, lit.size(), lit) == 0) {
      i += lit.size();
      return true;
    }
    return false;
  }

  void expect_lit(const std::string& lit) {
    if (!try_lit(lit)) fail("expected '" + lit + "'");
  }

  std::string word() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                            s[i] == '-' || s[i] == '~')) {
      ++i;
    }
    if (start == i) fail("expected an identifier");
    return s.substr(start, i - start);
  }

  std::uint64_t number(const char* what) {
    skip_ws();
    std::size_t start = i;
    std::uint64_t v = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (v > kParamCap) fail(std::string(what) + " exceeds 1000000");
      ++i;
    }
    if (start == i) fail(std::string("expected ") + what);
    return v;
  }

  std::string quoted() {
    skip_ws();
    if (i >= s.size() || s[i] != '"') fail("expected a double-quoted value");
    ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != '"') ++i;
    if (i >= s.size()) fail("unterminated quoted value");
    std::string v = s.substr(start, i - start);
    ++i;
    return v;
  }

  std::string rest() {
    skip_ws();
    std::size_t end = s.size();
    while (end > i && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r')) --end;
    return s.substr(i, end - i);
  }
};

FormulaPtr parse_rel_formula(LineScanner& sc, const std::string& text) {
  try {
    return parse_formula(text, ParseMode::Relational);
  } catch (const SyntaxError& e) {
    sc.fail(std::string("bad formula: ") + e.what());
  }
}

// Parses the optional [key="value", ...] block.  When `info` is null (the id
// is unknown to the schema table), values are scanned but discarded; the
// checker will reject the step by id.
Bindings parse_bindings(LineScanner& sc, const SchemaInfo* info, const std::string& id) {
  Bindings out;
  if (!sc.try_lit("[")) return out;
  if (sc.try_lit("]")) return out;
  while (true) {
    std::string key = sc.word();
    sc.expect_lit("=");
    std::string value = sc.quoted();
    if (info) {
      const std::pair<std::string, BindKind>* slot = nullptr;
      for (const auto& kv : info->binds)
        if (kv.first == key) slot = &kv;
      if (!slot) sc.fail("unknown binding key '" + key + "' for '" + id + "'");
      if (out.count(key)) sc.fail("duplicate binding key '" + key + "'");
      try {
        switch (slot->second) {
          case BindKind::FormulaB:
            out[key] = Binding::of_formula(parse_formula(value, ParseMode::Relational));
            break;
          case BindKind::TermB:
            out[key] = Binding::of_term(parse_term(value, ParseMode::Relational));
            break;
          case BindKind::VarB: {
            TermPtr t = parse_term(value, ParseMode::Relational);
            if (t->tag != TermTag::Var)
              sc.fail("binding '" + key + "' must be a variable name");
            out[key] = Binding::of_var(t->name);
            break;
          }
        }
      } catch (const SyntaxError& e) {
        sc.fail("bad value for binding '" + key + "': " + e.what());
      } catch (const FormError& e) {
        sc.fail("bad value for binding '" + key + "': " + e.what());
      }
    }
    if (sc.try_lit("]")) break;
    sc.expect_lit(",");
  }
  return out;
}

bool is_plain_id(const std::string& w) {
  if (w.empty() || !(w[0] >= 'a' && w[0] <= 'z')) return false;
  for (char c : w)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

}  // namespace

ProofScript parse_script(const std::string& text) {
  ProofScript script;
  bool have_profile = false;
  bool steps_started = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    LineScanner sc{raw, 0, line_no};
    if (sc.at_end()) continue;
    if (raw[sc.i] == '#') continue;

    if (!have_profile) {
      sc.expect_lit("profile:");
      std::string p = sc.word();
      if (p == "QL0") script.profile = Profile::QL0;
      else if (p == "QSLw") script.profile = Profile::QSLw;
      else sc.fail("unknown profile '" + p + "' (expected QL0 or QSLw)");
      if (!sc.at_end()) sc.fail("trailing input after profile");
      have_profile = true;
      continue;
    }

    if (sc.try_lit("theory:")) {
      if (steps_started || !script.assumptions.empty() || script.theory != TheoryKind::None)
        sc.fail("theory line must come right after the profile, once");
      std::string t = sc.word();
      if (t == "R~") script.theory = TheoryKind::R;
      else if (t == "Q~") script.theory = TheoryKind::Q;
      else sc.fail("unknown theory '" + t + "' (expected R~ or Q~)");
      if (!sc.at_end()) sc.fail("trailing input after theory");
      continue;
    }

    if (sc.try_lit("assume")) {
      if (steps_started) sc.fail("assumptions must precede all steps");
      std::string id = sc.word();
      if (!is_plain_id(id)) sc.fail("bad assumption id '" + id + "'");
      for (const auto& a : script.assumptions)
        if (a.first == id) sc.fail("duplicate assumption id '" + id + "'");
      sc.expect_lit("::");
      FormulaPtr f = parse_rel_formula(sc, sc.rest());
      script.assumptions.emplace_back(id, f);
      continue;
    }

    sc.expect_lit("step");
    steps_started = true;
    std::uint64_t n = sc.number("step number");
    if (n != script.steps.size() + 1)
      sc.fail("steps must be numbered consecutively from 1 (expected " +
              std::to_string(script.steps.size() + 1) + ")");

    Step st;
    if (sc.try_lit("axiom")) {
      st.kind = StepKind::Axiom;
      st.id = sc.word();
      st.bindings = parse_bindings(sc, axiom_info(script.profile, st.id), st.id);
    } else if (sc.try_lit("theory")) {
      st.kind = StepKind::Theory;
      st.id = sc.word();
      if (sc.try_lit("(")) {
        if (!sc.try_lit(")")) {
          while (true) {
            st.params.push_back(sc.number("theory parameter"));
            if (sc.try_lit(")")) break;
            sc.expect_lit(",");
          }
        }
      }
    } else if (sc.try_lit("rule")) {
      st.kind = StepKind::Rule;
      st.id = sc.word();
      sc.expect_lit("from");
      while (true) {
        std::uint64_t p = sc.number("premise step number");
        if (p == 0 || p > script.steps.size())
          sc.fail("premise must reference an earlier step (got " + std::to_string(p) + ")");
        st.premises.push_back(static_cast<std::size_t>(p - 1));
        if (!sc.try_lit(",")) break;
      }
      st.bindings = parse_bindings(sc, rule_info(script.profile, st.id), st.id);
    } else {
      sc.fail("expected 'axiom', 'theory' or 'rule'");
    }

    sc.expect_lit("::");
    st.conclusion = parse_rel_formula(sc, sc.rest());
    script.steps.push_back(std::move(st));
  }

  if (!have_profile) throw ScriptFormatError("missing 'profile:' line");
  if (script.steps.empty()) throw ScriptFormatError("script has no steps");
  return script;
}

namespace {

void print_bindings(std::ostringstream& os, const Step& st, const SchemaInfo* info) {
  if (st.bindings.empty()) return;
  os << " [";
  bool first = true;
  auto emit = [&](const std::string& key, const Binding& b) {
    if (!first) os << ", ";
    first = false;
    os << key << "=\"";
    switch (b.kind) {
      case BindKind::FormulaB: os << to_string(b.formula); break;
      case BindKind::TermB: os << to_string(b.term); break;
      case BindKind::VarB: os << b.var; break;
    }
    os << "\"";
  };
  if (info) {
    for (const auto& [name, kind] : info->binds) {
      auto it = st.bindings.find(name);
      if (it != st.bindings.end()) emit(name, it->second);
    }
  } else {
    for (const auto& [name, b] : st.bindings) emit(name, b);
  }
  os << "]";
}

}  // namespace

std::string print_script(const ProofScript& script) {
  std::ostringstream os;
  os << "profile: " << to_string(script.profile) << "\n";
  if (script.theory != TheoryKind::None) os << "theory: " << to_string(script.theory) << "\n";
  for (const auto& [id, f] : script.assumptions)
    os << "assume " << id << " :: " << to_string(f) << "\n";
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const Step& st = script.steps[i];
    os << "step " << (i + 1) << " ";
    switch (st.kind) {
      case StepKind::Axiom:
        os << "axiom " << st.id;
        print_bindings(os, st, axiom_info(script.profile, st.id));
        break;
      case StepKind::Theory:
        os << "theory " << st.id;
        if (!st.params.empty()) {
          os << "(";
          for (std::size_t j = 0; j < st.params.size(); ++j) {
            if (j) os << ",";
            os << st.params[j];
          }
          os << ")";
        }
        break;
      case StepKind::Rule:
        os << "rule " << st.id << " from ";
        for (std::size_t j = 0; j < st.premises.size(); ++j) {
          if (j) os << ", ";
          os << (st.premises[j] + 1);
        }
        print_bindings(os, st, rule_info(script.profile, st.id));
        break;
    }
    os << " :: " << to_string(st.conclusion) << "\n";
  }
  return os.str();
}

}  // namespace relic
