#include "stewart/script.hpp"

#include <cctype>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "stewart/errors.hpp"

namespace stewart {

namespace {

class ScriptReader {
 public:
  explicit ScriptReader(std::string_view text) : text_(text) {}

  std::vector<Statement> read() {
    std::vector<Statement> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) return out;
      if (text_[pos_] == '#') {
        const std::string c = comment();
        if (!out.empty() && out.back().kind == Statement::Kind::Eval && !out.back().expected) {
          if (has_token(c, "TRUE")) out.back().expected = true;
          if (has_token(c, "FALSE")) out.back().expected = false;
        }
        continue;
      }
      out.push_back(statement());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, pos_ - line_start_ + 1);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  std::string comment() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool has_token(const std::string& text, std::string_view token) {
    for (std::size_t at = text.find(token); at != std::string::npos;
         at = text.find(token, at + 1)) {
      const bool left = at == 0 || !std::isalnum(static_cast<unsigned char>(text[at - 1]));
      const std::size_t end = at + token.size();
      const bool right = end >= text.size() || !std::isalnum(static_cast<unsigned char>(text[end]));
      if (left && right) return true;
    }
    return false;
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Statement statement() {
    Statement st;
    st.line = line_;
    const std::string kw = word();
    if (kw == "eval") {
      st.kind = Statement::Kind::Eval;
    } else if (kw == "def") {
      st.kind = Statement::Kind::Def;
    } else if (kw == "reg") {
      st.kind = Statement::Kind::Reg;
    } else {
      fail(kw.empty() ? "expected eval, def or reg" : "unknown command '" + kw + "'");
    }
    st.name = word();
    if (st.name.empty()) fail("expected a name");
    if (st.kind == Statement::Kind::Reg) {
      while (true) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] == '"') break;
        const std::string tag = word();
        if (tag.rfind("lsd_", 0) != 0 || tag.size() == 4) fail("expected an lsd_k tag");
        st.bases.push_back(std::stoi(tag.substr(4)));
      }
      if (st.bases.empty()) fail("reg needs at least one lsd_k tag");
    }
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected '\"'");
    advance();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') advance();
    if (pos_ >= text_.size()) fail("unterminated string");
    st.body = std::string(text_.substr(start, pos_ - start));
    advance();
    skip_space();
    if (pos_ >= text_.size() || (text_[pos_] != ':' && text_[pos_] != ';')) {
      fail("expected ':' or ';' after the statement");
    }
    advance();
    return st;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

const char* kind_name(Statement::Kind k) {
  switch (k) {
    case Statement::Kind::Eval: return "eval";
    case Statement::Kind::Def: return "def";
    case Statement::Kind::Reg: return "reg";
  }
  return "";
}

}  // namespace

std::vector<Statement> parse_script(std::string_view text) {
  return ScriptReader(text).read();
}

std::string StatementResult::summary(bool with_time) const {
  std::ostringstream os;
  os << kind_name(kind) << ' ' << name << ": ";
  if (verdict) {
    os << (*verdict ? "TRUE" : "FALSE");
    if (!as_expected()) os << " (expected " << (*expected ? "TRUE" : "FALSE") << ")";
  } else {
    os << states << (states == 1 ? " state" : " states");
    if (!vars.empty()) {
      os << (vars.size() == 1 ? ", var " : ", vars ");
      for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? "," : "") << vars[i];
    }
  }
  if (with_time) os << " (" << std::fixed << std::setprecision(0) << millis << " ms)";
  return os.str();
}

StatementResult run_statement(Session& session, const Statement& st) {
  const auto start = std::chrono::steady_clock::now();
  StatementResult r;
  r.kind = st.kind;
  r.name = st.name;
  r.expected = st.expected;
  switch (st.kind) {
    case Statement::Kind::Eval:
      r.verdict = session.eval_closed(st.body);
      break;
    case Statement::Kind::Def: {
      const NamedAutomaton& a = session.define(st.name, st.body);
      r.states = a.dfa.num_states();
      r.vars = a.params;
      break;
    }
    case Statement::Kind::Reg: {
      const NamedAutomaton& a = session.register_regex(st.name, {st.bases, st.body});
      r.states = a.dfa.num_states();
      r.vars = a.params;
      break;
    }
  }
  r.millis = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
                 .count();
  return r;
}

std::vector<StatementResult> run_script(Session& session,
                                        const std::vector<Statement>& statements) {
  std::vector<StatementResult> out;
  for (const Statement& st : statements) out.push_back(run_statement(session, st));
  return out;
}

}  // namespace stewart
