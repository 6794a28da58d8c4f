#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stewart {

/// Syntax error in a formula, regex, automaton file or script. `line` and
/// `column` are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(format(what, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    std::string where;
    if (line) where += "line " + std::to_string(line);
    if (column) where += (where.empty() ? "" : ", ") + std::string("column ") +
                         std::to_string(column);
    return where.empty() ? what : where + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A determinization or product grew past the configured number of states.
class StateCapExceeded : public std::runtime_error {
 public:
  explicit StateCapExceeded(std::size_t cap)
      : std::runtime_error("automaton exceeded the state cap of " +
                           std::to_string(cap) + " states"),
        cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace stewart
