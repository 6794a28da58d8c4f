#pragma once

// Reference evaluator for the query language: enumerates assignments over a
// finite domain and reads symbols straight from toeplitz_prefix. Used as a
// differential oracle for the automaton compiler.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stewart/formula.hpp"

namespace stewart::testing {

struct NaiveDomain {
  std::size_t max_pattern_len = 3;   // sequence variables range over |t| <= this
  std::uint64_t position_bound = 28;  // other variables range over [0, bound)
  std::set<std::string> sequence_vars = {"t", "u"};
};

class NaiveEvaluator {
 public:
  explicit NaiveEvaluator(NaiveDomain domain);

  /// Makes `$name(...)` available; parameters are the sorted free variables.
  void define(const std::string& name, std::string_view text);

  bool eval_closed(std::string_view text);

 private:
  using Env = std::map<std::string, std::uint64_t>;

  bool holds(const Formula& f, Env& env);
  bool quantify(const Formula& f, std::size_t k, Env& env);
  std::optional<int> symbol(std::uint64_t t, std::uint64_t n);
  bool call(const std::string& name, const std::vector<std::uint64_t>& args);

  NaiveDomain domain_;
  std::vector<std::uint64_t> sequences_;
  std::map<std::uint64_t, std::string> words_;
  struct Def {
    ParsedFormula formula;
    std::vector<std::string> params;
  };
  std::map<std::string, Def> defs_;
};

}  // namespace stewart::testing
