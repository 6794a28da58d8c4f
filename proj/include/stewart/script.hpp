#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stewart/prover.hpp"

namespace stewart {

/// One `eval`, `def` or `reg` command of a query file.
struct Statement {
  enum class Kind { Eval, Def, Reg };
  Kind kind = Kind::Eval;
  std::string name;
  std::vector<int> bases;  // reg only, from the lsd_k tags
  std::string body;        // text between the quotes
  std::size_t line = 0;
  /// Verdict announced by a comment right after an eval ("# returns TRUE").
  std::optional<bool> expected;
};

/// Statements look like `def name "body":`; the body may span lines and the
/// terminator may be ':' or ';'. Lines starting with '#' are comments; a
/// comment containing TRUE or FALSE right after an eval records the expected
/// verdict.
std::vector<Statement> parse_script(std::string_view text);

struct StatementResult {
  Statement::Kind kind = Statement::Kind::Eval;
  std::string name;
  std::optional<bool> verdict;        // eval
  std::optional<bool> expected;
  std::size_t states = 0;             // def, reg
  std::vector<std::string> vars;      // def, reg
  double millis = 0;

  /// False only for an eval whose verdict contradicts its expectation.
  bool as_expected() const { return !expected || expected == verdict; }

  /// "eval hascube: FALSE" or "def pal: 4 states, var n".
  std::string summary(bool with_time = false) const;
};

/// Runs the statements in order against `session`, stopping at the first
/// error (ParseError, CompileError, StateCapExceeded are passed through).
std::vector<StatementResult> run_script(Session& session,
                                        const std::vector<Statement>& statements);

/// Runs a single statement.
StatementResult run_statement(Session& session, const Statement& st);

}  // namespace stewart
