#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stewart/automata.hpp"

namespace stewart {

// Relations between naturals in a single base, read lsd-first. Track order
// follows the argument order in each name (x, y for "x < y", x, y, z for
// "x + y = z").
Dfa rel_eq(int base);
Dfa rel_lt(int base);
Dfa rel_leq(int base);
Dfa rel_add(int base);
/// One track accepting exactly `value`.
Dfa rel_const(std::uint64_t value, int base);

/// Tracks (x, y) with y = c * x. Built from doubling and addition steps.
Dfa mul_const(std::uint64_t c, int base, const Limits& limits = {});
/// Tracks (x, y) with y = floor(x / c).
Dfa div_const(std::uint64_t c, int base, const Limits& limits = {});

/// Regular expression over digit tuples: literals are single digits for one
/// track or bracketed tuples "[1,0]"; operators are |, *, + and ?, with
/// parentheses. Whitespace is ignored.
struct RegexOverTuples {
  std::vector<int> bases;
  std::string pattern;
};

/// Thompson construction, subset construction, minimization and zero-padding
/// normalization. Throws ParseError on malformed input or out-of-range digits.
Dfa compile_regex(const RegexOverTuples& r, const Limits& limits = {});

struct BuiltinRegex {
  std::string_view name;
  std::vector<int> bases;
  std::string_view pattern;
};

/// pref, link, bnd, power3 and differ with their track bases.
const std::vector<BuiltinRegex>& builtin_regexes();

Dfa builtin_pref();
Dfa builtin_link();
Dfa builtin_bnd();
Dfa builtin_power3();
Dfa builtin_differ();

}  // namespace stewart
