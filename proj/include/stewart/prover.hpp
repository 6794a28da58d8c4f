#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "stewart/arith.hpp"
#include "stewart/automata.hpp"
#include "stewart/formula.hpp"

namespace stewart {

/// A stored relation: track i of `dfa` is the parameter `params[i]`.
struct NamedAutomaton {
  Dfa dfa;
  std::vector<std::string> params;
};

/// Result of compiling a formula: track i holds free variable `vars[i]`,
/// sorted by name.
struct Compiled {
  Dfa dfa;
  std::vector<std::string> vars;
};

/// Name resolution, base inference or arity problems in a formula.
class CompileError : public std::runtime_error {
 public:
  CompileError(const std::string& what, std::size_t column)
      : std::runtime_error(column ? "column " + std::to_string(column) + ": " + what
                                  : what),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Named automata and word automata available to formulas. Compilation
/// memoizes building blocks, so a Session must not be shared between threads.
class Session {
 public:
  Session() = default;

  /// Session with TP bound to the Stewart automaton and pref, link, bnd,
  /// power3 and differ registered.
  static Session with_builtins();

  Limits limits;
  /// Rejects "$link7" instead of resolving it to link.
  bool strict = false;
  /// Base for unconstrained variables when a formula has no ?lsd_k prefix;
  /// 0 makes such formulas an error.
  int default_base = 0;
  /// Reads W[a] != W[b] as the negation of W[a] = W[b], so an undefined side
  /// counts as different. When false, both sides must be defined.
  bool negated_inequality = false;

  void add_word(const std::string& name, Dfao word);
  void add_automaton(const std::string& name, NamedAutomaton a);
  bool has_name(const std::string& name) const;
  const NamedAutomaton* find_automaton(const std::string& name) const;
  const Dfao* find_word(const std::string& name) const;
  std::vector<std::string> automaton_names() const;

  Compiled compile(const ParsedFormula& f) const;
  Compiled compile(std::string_view text) const;

  /// Throws CompileError if the formula has free variables.
  bool eval_closed(std::string_view text) const;

  /// Compiles and stores `text` under `name`. Tracks follow `var_order` if
  /// given, otherwise the sorted free variables.
  const NamedAutomaton& define(
      const std::string& name, std::string_view text,
      const std::optional<std::vector<std::string>>& var_order = std::nullopt);

  const NamedAutomaton& register_regex(const std::string& name,
                                       const RegexOverTuples& r,
                                       std::vector<std::string> params = {});

  // Memoized building blocks, shared by all compilations in this session.
  const Dfa& word_output(const std::string& word, int value) const;
  const Dfa& mul(std::uint64_t c, int base) const;
  const Dfa& div(std::uint64_t c, int base) const;

 private:
  std::map<std::string, NamedAutomaton> automata_;
  std::map<std::string, Dfao> words_;
  mutable std::map<std::pair<std::string, int>, Dfa> output_cache_;
  mutable std::map<std::tuple<char, std::uint64_t, int>, Dfa> arith_cache_;
};

}  // namespace stewart
