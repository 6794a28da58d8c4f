#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stewart/automata.hpp"
#include "stewart/words.hpp"

// Brute-force checks on finite words. They never touch the automata, so they
// can serve as independent references for the prover. Factors that contain
// the hole '?' are skipped unless stated otherwise.

namespace stewart {

/// Calls `fn` on every pattern sequence of length `len`, in lexicographic
/// order of letters.
void for_each_sequence(std::size_t len, const std::function<void(const PatternSeq&)>& fn);

/// `count` uniformly random sequences of length `len` from a seeded generator.
std::vector<PatternSeq> sample_sequences(std::size_t len, std::size_t count,
                                         std::uint64_t seed);

/// 6^len, or nullopt when it does not fit.
std::optional<std::uint64_t> sequence_count(std::size_t len);

/// All palindromic factors of T(t), including the empty word and "?".
std::set<std::string> find_palindromes(const PatternSeq& t);

/// The palindromes of every Stewart word, as strings over {0,1,?}.
const std::set<std::string>& stewart_palindromes();

struct Repetition {
  std::size_t position = 0;
  std::size_t period = 0;
  friend bool operator==(const Repetition&, const Repetition&) = default;
};

/// Leftmost boolean cube xxx (shortest period first at that position).
std::optional<Repetition> find_cube(std::string_view w);

/// Position of a boolean factor of T(t) with length 3^(l-2)-1 and period
/// 3^(l-3), l = |t|. Throws std::invalid_argument if |t| < 4.
std::optional<std::size_t> critexp_witness(const PatternSeq& t);
bool verify_critexp(const PatternSeq& t);

/// Every n >= 1 such that a boolean square xx with |x| = n occurs in w.
std::set<std::size_t> square_orders(std::string_view w);

/// Number of distinct boolean length-n factors of T(t).
/// Requires 1 <= n <= 3^(|t|-2), otherwise std::invalid_argument.
std::size_t boolean_factor_count(const PatternSeq& t, std::size_t n);

/// Boolean length-n factors x of T(t) such that x0 and x1 are both factors
/// of the Stewart words extending t. Since n+1 can exceed 3^(|t|-2), the
/// extensions are read from T(t a), which contains every factor of length
/// up to 3^(|t|-1). Same range requirement as boolean_factor_count.
std::set<std::string> right_special(const PatternSeq& t, std::size_t n);

/// Right-special boolean factors of length n counted inside w alone.
std::set<std::string> right_special_in(std::string_view w, std::size_t n);

struct XxyyxxWitness {
  std::size_t i = 0;
  std::size_t m = 0;  // |x| >= 1
  std::size_t n = 0;  // |y| >= 0
};

/// An occurrence of xxyyxx starting at i, if any.
std::optional<XxyyxxWitness> find_xxyyxx(std::string_view w);

/// Length of the longest common boolean factor, by dynamic programming.
std::size_t longest_common_factor(std::string_view w1, std::string_view w2);

struct ApWitness {
  std::size_t i = 0;
  std::size_t m = 0;
};

/// i, m >= 1 with w[i] = w[i+2m] = w[i+4m] != w[i+m] = w[i+3m], all boolean.
std::optional<ApWitness> find_ap_alternation(std::string_view w);

/// Every boolean length-n factor of T(u) occurs in T(t). Requires t to be a
/// prefix of u.
bool check_factor_coverage(const PatternSeq& t, const PatternSeq& u, std::size_t n);

/// Index of the first pattern pair outside X, for sequences of equal length.
std::optional<std::size_t> first_non_x_index(const PatternSeq& t, const PatternSeq& u);

/// Single-track base-3 DFAO for T(t)[n]: the Stewart automaton restricted to
/// the prefixes of t (padded with zeros), with the pattern track projected
/// away. Positions that stay '?' forever get `fill`, or UnresolvedHole is
/// thrown.
Dfao dfao_from_periodic(const UltimatelyPeriodicSeq& t,
                        std::optional<int> fill = std::nullopt,
                        const Limits& limits = {});

/// Recovers the pattern sequence of a Stewart word from a DFAO computing it.
/// Throws std::invalid_argument ("not a Stewart word") when the outputs do
/// not fit any pattern.
UltimatelyPeriodicSeq reconstruct_pattern_seq(const Dfao& m);

/// The walk behind reconstruct_pattern_seq: states[k] is labeled letters[k],
/// and the walk returns to states[cycle_start].
struct ReconstructionTrace {
  std::vector<State> states;
  std::vector<Pattern> letters;
  std::size_t cycle_start = 0;
};
ReconstructionTrace trace_pattern_seq(const Dfao& m);

}  // namespace stewart
