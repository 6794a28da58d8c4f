#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace stewart {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Presburger term: variables, constants, +, - and multiplication or floor
/// division by a positive constant.
struct Term {
  enum class Kind { Var, Const, Add, Sub, Mul, Div };

  Kind kind = Kind::Const;
  std::string name;          // Var
  std::uint64_t value = 0;   // Const, and the constant factor of Mul/Div
  TermPtr lhs;               // Add, Sub, Mul, Div
  TermPtr rhs;               // Add, Sub
  std::size_t pos = 0;       // offset in the source text

  static TermPtr var(std::string name, std::size_t pos = 0);
  static TermPtr constant(std::uint64_t value, std::size_t pos = 0);
  static TermPtr binary(Kind kind, TermPtr lhs, TermPtr rhs, std::size_t pos = 0);
  static TermPtr scaled(Kind kind, TermPtr arg, std::uint64_t c, std::size_t pos = 0);
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

/// W[i1][i2]... for a word automaton W with one index per track.
struct WordRef {
  std::string name;
  std::vector<TermPtr> indices;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Exists,
    Forall,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Compare,      // term op term
    WordConst,    // W[..] op @c
    WordWord,     // W[..] op V[..]
    Call,         // $name(args)
  };

  Kind kind = Kind::Compare;
  std::size_t pos = 0;

  std::vector<std::string> vars;  // Exists, Forall
  FormulaPtr lhs;                 // body for quantifiers and Not
  FormulaPtr rhs;

  CompareOp op = CompareOp::Eq;   // Compare, WordConst, WordWord
  TermPtr left_term;
  TermPtr right_term;
  WordRef left_word;
  WordRef right_word;
  int constant = 0;               // WordConst

  std::string name;               // Call
  std::vector<TermPtr> args;
};

/// A formula together with the optional "?lsd_k" directive that prefixed it.
struct ParsedFormula {
  int base = 0;  // 0 when no directive was given
  FormulaPtr root;
};

/// Grammar, loosest binding first: <=>, =>, |, &, then ~ and atoms.
/// Quantifiers "A" / "E" take a comma-separated variable list and extend to
/// the end of the enclosing parenthesized group. Throws ParseError with the
/// 1-based column of the offending character.
ParsedFormula parse_formula(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

/// Variables occurring in the term, in order of first occurrence.
void collect_vars(const Term& t, std::vector<std::string>& out);

}  // namespace stewart
