#include "stewart/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "stewart/errors.hpp"

namespace stewart {

TermPtr Term::var(std::string name, std::size_t pos) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  t->pos = pos;
  return t;
}

TermPtr Term::constant(std::uint64_t value, std::size_t pos) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Const;
  t->value = value;
  t->pos = pos;
  return t;
}

TermPtr Term::binary(Kind kind, TermPtr lhs, TermPtr rhs, std::size_t pos) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->lhs = std::move(lhs);
  t->rhs = std::move(rhs);
  t->pos = pos;
  return t;
}

TermPtr Term::scaled(Kind kind, TermPtr arg, std::uint64_t c, std::size_t pos) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->lhs = std::move(arg);
  t->value = c;
  t->pos = pos;
  return t;
}

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident(char c) { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedFormula parse() {
    ParsedFormula out;
    skip_ws();
    if (peek() == '?') out.base = parse_directive();
    out.root = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what, 0, at + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_at(std::size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  bool lookahead(std::string_view s) {
    skip_ws();
    return text_.substr(pos_, s.size()) == s;
  }
  bool accept(std::string_view s) {
    if (!lookahead(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  int parse_directive() {
    const std::size_t at = pos_;
    ++pos_;
    if (text_.substr(pos_, 4) == "msd_") fail_at("msd-first numeration is not supported", at);
    if (text_.substr(pos_, 4) != "lsd_") fail_at("expected ?lsd_<base>", at);
    pos_ += 4;
    const std::uint64_t b = read_number();
    if (b < 2 || b > 1000) fail_at("unsupported base", at);
    return static_cast<int>(b);
  }

  std::uint64_t read_number() {
    skip_ws();
    if (!is_digit(peek_at(0))) fail("expected a number");
    std::uint64_t v = 0;
    while (is_digit(peek_at(0))) {
      const auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::string read_ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (is_ident(peek_at(0))) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_var() {
    skip_ws();
    if (!is_lower(peek_at(0))) fail("expected a variable name");
    return read_ident();
  }

  static FormulaPtr node(Formula::Kind kind, FormulaPtr lhs, FormulaPtr rhs,
                         std::size_t pos) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->lhs = std::move(lhs);
    f->rhs = std::move(rhs);
    f->pos = pos;
    return f;
  }

  FormulaPtr parse_iff() {
    FormulaPtr f = parse_implies();
    while (true) {
      const std::size_t at = (skip_ws(), pos_);
      if (!accept("<=>")) return f;
      f = node(Formula::Kind::Iff, f, parse_implies(), at);
    }
  }

  FormulaPtr parse_implies() {
    FormulaPtr f = parse_or();
    const std::size_t at = (skip_ws(), pos_);
    if (accept("=>")) return node(Formula::Kind::Implies, f, parse_implies(), at);
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (true) {
      const std::size_t at = (skip_ws(), pos_);
      if (!accept("|")) return f;
      f = node(Formula::Kind::Or, f, parse_and(), at);
    }
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (true) {
      const std::size_t at = (skip_ws(), pos_);
      if (!accept("&")) return f;
      f = node(Formula::Kind::And, f, parse_unary(), at);
    }
  }

  bool at_quantifier() {
    const char c = peek();
    if (c != 'A' && c != 'E') return false;
    std::size_t i = pos_ + 1;
    while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
    return i < text_.size() && is_lower(text_[i]);
  }

  FormulaPtr parse_unary() {
    const std::size_t at = (skip_ws(), pos_);
    if (accept("~")) return node(Formula::Kind::Not, parse_unary(), nullptr, at);
    if (at_quantifier()) {
      const bool universal = text_[pos_] == 'A';
      ++pos_;
      auto f = std::make_shared<Formula>();
      f->kind = universal ? Formula::Kind::Forall : Formula::Kind::Exists;
      f->pos = at;
      f->vars.push_back(read_var());
      while (accept(",")) f->vars.push_back(read_var());
      f->lhs = parse_iff();
      return f;
    }
    return parse_primary();
  }

  bool at_comparison_or_arith() {
    const char c = peek();
    if (c == '<') return !(peek_at(1) == '=' && peek_at(2) == '>');
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '>') return true;
    if (c == '=') return peek_at(1) != '>';
    if (c == '!') return true;
    return false;
  }

  FormulaPtr parse_primary() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      // Either a parenthesized formula or a term starting with '('.
      std::optional<ParseError> formula_error;
      try {
        ++pos_;
        FormulaPtr f = parse_iff();
        expect(")");
        if (!at_comparison_or_arith()) return f;
      } catch (const ParseError& e) {
        formula_error = e;
      }
      pos_ = at;
      try {
        return parse_comparison();
      } catch (const ParseError& e) {
        if (formula_error && formula_error->column() > e.column()) throw *formula_error;
        throw;
      }
    }
    if (c == '$') return parse_call();
    if (is_upper(c)) return parse_word_atom();
    if (c == '\0') fail("unexpected end of formula");
    return parse_comparison();
  }

  FormulaPtr parse_call() {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Call;
    f->pos = pos_;
    expect("$");
    f->name = read_ident();
    expect("(");
    f->args.push_back(parse_term());
    while (accept(",")) f->args.push_back(parse_term());
    expect(")");
    return f;
  }

  WordRef parse_word_ref() {
    WordRef w;
    w.name = read_ident();
    if (peek() != '[') fail("expected '[' after word name " + w.name);
    while (accept("[")) {
      w.indices.push_back(parse_term());
      expect("]");
    }
    return w;
  }

  FormulaPtr parse_word_atom() {
    auto f = std::make_shared<Formula>();
    f->pos = pos_;
    f->left_word = parse_word_ref();
    skip_ws();
    if (accept("!=")) {
      f->op = CompareOp::Ne;
    } else if (accept("=")) {
      f->op = CompareOp::Eq;
    } else {
      fail("expected '=' or '!=' after word index");
    }
    if (accept("@")) {
      f->kind = Formula::Kind::WordConst;
      f->constant = static_cast<int>(read_number());
    } else {
      skip_ws();
      if (!is_upper(peek_at(0))) fail("expected '@constant' or a word index");
      f->kind = Formula::Kind::WordWord;
      f->right_word = parse_word_ref();
    }
    return f;
  }

  FormulaPtr parse_comparison() {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Compare;
    f->pos = (skip_ws(), pos_);
    f->left_term = parse_term();
    skip_ws();
    if (accept("!=")) {
      f->op = CompareOp::Ne;
    } else if (lookahead("<=>")) {
      fail("expected a comparison operator");
    } else if (accept("<=")) {
      f->op = CompareOp::Le;
    } else if (accept(">=")) {
      f->op = CompareOp::Ge;
    } else if (accept("<")) {
      f->op = CompareOp::Lt;
    } else if (accept(">")) {
      f->op = CompareOp::Gt;
    } else if (!lookahead("=>") && accept("=")) {
      f->op = CompareOp::Eq;
    } else {
      fail("expected a comparison operator");
    }
    f->right_term = parse_term();
    return f;
  }

  TermPtr parse_term() {
    TermPtr t = parse_product();
    while (true) {
      const std::size_t at = (skip_ws(), pos_);
      if (accept("+")) {
        t = Term::binary(Term::Kind::Add, t, parse_product(), at);
      } else if (accept("-")) {
        t = Term::binary(Term::Kind::Sub, t, parse_product(), at);
      } else {
        return t;
      }
    }
  }

  TermPtr parse_product() {
    TermPtr t = parse_factor();
    while (true) {
      const std::size_t at = (skip_ws(), pos_);
      if (accept("*")) {
        TermPtr u = parse_factor();
        if (t->kind == Term::Kind::Const) {
          t = scale(u, t->value, at);
        } else if (u->kind == Term::Kind::Const) {
          t = scale(t, u->value, at);
        } else {
          fail_at("multiplication needs a constant factor", at);
        }
      } else if (accept("/")) {
        const std::uint64_t c = read_number();
        if (c == 0) fail_at("division by zero", at);
        t = Term::scaled(Term::Kind::Div, t, c, at);
      } else {
        return t;
      }
    }
  }

  static TermPtr scale(TermPtr t, std::uint64_t c, std::size_t at) {
    if (t->kind == Term::Kind::Const) return Term::constant(t->value * c, at);
    return Term::scaled(Term::Kind::Mul, std::move(t), c, at);
  }

  TermPtr parse_factor() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      TermPtr t = parse_term();
      expect(")");
      return t;
    }
    if (is_digit(c)) return Term::constant(read_number(), at);
    if (is_lower(c)) return Term::var(read_ident(), at);
    fail(c == '\0' ? "unexpected end of term" : "expected a term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

std::string word_text(const WordRef& w) {
  std::string s = w.name;
  for (const auto& i : w.indices) s += "[" + to_string(*i) + "]";
  return s;
}

}  // namespace

ParsedFormula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return t.name;
    case Term::Kind::Const: return std::to_string(t.value);
    case Term::Kind::Add: return "(" + to_string(*t.lhs) + "+" + to_string(*t.rhs) + ")";
    case Term::Kind::Sub: return "(" + to_string(*t.lhs) + "-" + to_string(*t.rhs) + ")";
    case Term::Kind::Mul: return std::to_string(t.value) + "*" + to_string(*t.lhs);
    case Term::Kind::Div: return to_string(*t.lhs) + "/" + std::to_string(t.value);
  }
  return "";
}

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  switch (f.kind) {
    case K::Exists: return "(E" + join(f.vars) + " " + to_string(*f.lhs) + ")";
    case K::Forall: return "(A" + join(f.vars) + " " + to_string(*f.lhs) + ")";
    case K::Not: return "~" + to_string(*f.lhs);
    case K::And: return "(" + to_string(*f.lhs) + " & " + to_string(*f.rhs) + ")";
    case K::Or: return "(" + to_string(*f.lhs) + " | " + to_string(*f.rhs) + ")";
    case K::Implies: return "(" + to_string(*f.lhs) + " => " + to_string(*f.rhs) + ")";
    case K::Iff: return "(" + to_string(*f.lhs) + " <=> " + to_string(*f.rhs) + ")";
    case K::Compare:
      return to_string(*f.left_term) + op_text(f.op) + to_string(*f.right_term);
    case K::WordConst:
      return word_text(f.left_word) + op_text(f.op) + "@" + std::to_string(f.constant);
    case K::WordWord:
      return word_text(f.left_word) + op_text(f.op) + word_text(f.right_word);
    case K::Call: {
      std::string s = "$" + f.name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        s += (i ? "," : "") + to_string(*f.args[i]);
      }
      return s + ")";
    }
  }
  return "";
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  if (t.lhs) collect_vars(*t.lhs, out);
  if (t.rhs) collect_vars(*t.rhs, out);
}

}  // namespace stewart
