#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stewart/numeration.hpp"

namespace stewart {

inline constexpr char kHole = '?';

/// One of the six length-3 Toeplitz patterns that are permutations of 0, 1, ?.
/// The enumerator value is the numeric letter code; 0 is reserved for padding.
enum class Pattern : std::uint8_t { a = 1, b, c, d, e, f };

inline constexpr std::array<Pattern, 6> kAllPatterns = {
    Pattern::a, Pattern::b, Pattern::c, Pattern::d, Pattern::e, Pattern::f};

std::string_view symbols(Pattern p);
char letter(Pattern p);
int digit(Pattern p);
/// Index of the '?' inside the pattern.
int hole_index(Pattern p);

std::optional<Pattern> pattern_from_letter(char c);
/// Throws std::invalid_argument for anything outside 1..6.
Pattern pattern_from_digit(int d);

/// Finite sequence of Stewart patterns. Numerically it is a base-7 lsd-first
/// digit string over 1..6, where trailing zeros are padding.
class PatternSeq {
 public:
  PatternSeq() = default;
  explicit PatternSeq(std::vector<Pattern> letters)
      : letters_(std::move(letters)) {}

  /// Parses a letter string such as "afe".
  static PatternSeq parse(std::string_view text);
  /// Accepts trailing zero digits; a zero followed by a letter is an error.
  static PatternSeq from_digits(const std::vector<int>& digits);
  /// Inverse of value(); throws if the base-7 form has an interior zero.
  static PatternSeq from_value(std::uint64_t value);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Pattern operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Pattern>& letters() const { return letters_; }
  void push_back(Pattern p) { letters_.push_back(p); }

  PatternSeq prefix(std::size_t n) const;
  DigitString digits() const;
  std::uint64_t value() const;
  std::string str() const;

  friend bool operator==(const PatternSeq&, const PatternSeq&) = default;
  friend auto operator<=>(const PatternSeq&, const PatternSeq&) = default;

 private:
  std::vector<Pattern> letters_;
};

/// A preperiod followed by a nonempty period repeated forever.
class UltimatelyPeriodicSeq {
 public:
  UltimatelyPeriodicSeq(PatternSeq preperiod, PatternSeq period);

  /// Parses "pre(period)", e.g. "(ad)", "af(c)".
  static UltimatelyPeriodicSeq parse(std::string_view text);

  const PatternSeq& preperiod() const { return preperiod_; }
  const PatternSeq& period() const { return period_; }
  Pattern at(std::size_t i) const;
  PatternSeq prefix(std::size_t n) const;

  /// True if every letter from index `from` onwards is e or f.
  bool hole_fixed_from(std::size_t from) const;

  /// Shortest preperiod and primitive period describing the same sequence.
  UltimatelyPeriodicSeq canonical() const;
  std::string str() const;

  /// Equality of the infinite sequences, not of the descriptions.
  friend bool operator==(const UltimatelyPeriodicSeq& x,
                         const UltimatelyPeriodicSeq& y);

 private:
  PatternSeq preperiod_;
  PatternSeq period_;
};

/// Finite word over {0,1,?}.
class PartialWord {
 public:
  PartialWord() = default;
  /// Throws std::invalid_argument on symbols outside {0,1,?}.
  explicit PartialWord(std::string symbols);

  const std::string& str() const { return symbols_; }
  std::string_view view() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  char operator[](std::size_t i) const { return symbols_[i]; }
  std::size_t hole_count() const;

  /// Numeric view: 0, 1 and 2 for '?'.
  std::vector<int> numeric() const;

  friend bool operator==(const PartialWord&, const PartialWord&) = default;
  friend auto operator<=>(const PartialWord&, const PartialWord&) = default;

 private:
  std::string symbols_;
};

/// Replaces the three holes of y^3, in order, by the symbols of g.
/// Precondition: y has exactly one hole.
PartialWord expand(const PartialWord& y, Pattern g);

/// T(t): the length-3^|t| prefix; fold of expand starting from "?".
PartialWord toeplitz_prefix(const PatternSeq& t);

/// Thrown when a prefix of a Stewart word keeps its hole forever and no fill
/// symbol was supplied.
class UnresolvedHole : public std::runtime_error {
 public:
  explicit UnresolvedHole(std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Length-`len` prefix of the infinite Stewart word. If the pattern tail is in
/// {e,f}^omega the hole never moves; it is replaced by `fill` ('0' or '1') or
/// UnresolvedHole is thrown.
std::string stewart_prefix(const UltimatelyPeriodicSeq& t, std::size_t len,
                           std::optional<char> fill = std::nullopt);

/// Equal-length Toeplitz patterns over an arbitrary alphabet plus '?'.
class GenericPatternSet {
 public:
  explicit GenericPatternSet(std::vector<std::string> patterns);
  static GenericPatternSet stewart();

  const std::vector<std::string>& patterns() const { return patterns_; }
  std::size_t pattern_length() const { return patterns_.front().size(); }
  bool contains(std::string_view p) const;

 private:
  std::vector<std::string> patterns_;
};

/// Applies |choice| substitution stages to a window of `len` cells. Cells that
/// are still holes after the last stage stay '?'.
std::string generic_toeplitz_prefix(const GenericPatternSet& ps,
                                    const std::vector<std::string>& choice,
                                    std::size_t len);

int hamming(Pattern g, Pattern h);

enum class PairClass { InX, InY };
/// InX when the Hamming distance is 0 or 3, InY when it is 2.
PairClass classify_pair(Pattern g, Pattern h);

/// Distinct length-n factors of w; optionally only those without '?'.
std::set<std::string> factors(std::string_view w, std::size_t n,
                              bool boolean_only);

/// Exact nonnegative rational in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den);
  friend bool operator==(const Rational&, const Rational&) = default;
  std::string str() const;
};

struct PeriodExponent {
  std::size_t period = 0;
  Rational exponent;
};

/// Least period and |w|/period. Throws std::invalid_argument on empty input.
PeriodExponent period_exponent(std::string_view w);

}  // namespace stewart
