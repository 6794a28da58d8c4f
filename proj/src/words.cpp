#include "stewart/words.hpp"

#include <algorithm>
#include <numeric>

namespace stewart {

namespace {

constexpr std::array<std::string_view, 6> kSymbols = {"01?", "10?", "0?1",
                                                      "1?0", "?01", "?10"};

std::size_t index_of(Pattern p) { return static_cast<std::size_t>(p) - 1; }

bool is_partial_symbol(char c) { return c == '0' || c == '1' || c == kHole; }

}  // namespace

std::string_view symbols(Pattern p) { return kSymbols[index_of(p)]; }

char letter(Pattern p) { return static_cast<char>('a' + index_of(p)); }

int digit(Pattern p) { return static_cast<int>(p); }

int hole_index(Pattern p) {
  return static_cast<int>(symbols(p).find(kHole));
}

std::optional<Pattern> pattern_from_letter(char c) {
  if (c < 'a' || c > 'f') return std::nullopt;
  return static_cast<Pattern>(c - 'a' + 1);
}

Pattern pattern_from_digit(int d) {
  if (d < 1 || d > 6) {
    throw std::invalid_argument("pattern digit must be in 1..6, got " +
                                std::to_string(d));
  }
  return static_cast<Pattern>(d);
}

// ---------------------------------------------------------------------------

PatternSeq PatternSeq::parse(std::string_view text) {
  std::vector<Pattern> out;
  out.reserve(text.size());
  for (char c : text) {
    auto p = pattern_from_letter(c);
    if (!p) {
      throw std::invalid_argument(std::string("invalid pattern letter '") + c +
                                  "'");
    }
    out.push_back(*p);
  }
  return PatternSeq(std::move(out));
}

PatternSeq PatternSeq::from_digits(const std::vector<int>& digits) {
  std::size_t len = digits.size();
  while (len > 0 && digits[len - 1] == 0) --len;
  std::vector<Pattern> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (digits[i] == 0) {
      throw std::invalid_argument(
          "padding digit 0 followed by a pattern letter at position " +
          std::to_string(i));
    }
    out.push_back(pattern_from_digit(digits[i]));
  }
  return PatternSeq(std::move(out));
}

PatternSeq PatternSeq::from_value(std::uint64_t value) {
  return from_digits(encode(value, 7).digits);
}

PatternSeq PatternSeq::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return PatternSeq(
      std::vector<Pattern>(letters_.begin(), letters_.begin() + n));
}

DigitString PatternSeq::digits() const {
  DigitString d{7, {}};
  d.digits.reserve(letters_.size());
  for (Pattern p : letters_) d.digits.push_back(digit(p));
  return d;
}

std::uint64_t PatternSeq::value() const { return decode(digits()); }

std::string PatternSeq::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Pattern p : letters_) s.push_back(letter(p));
  return s;
}

// ---------------------------------------------------------------------------

UltimatelyPeriodicSeq::UltimatelyPeriodicSeq(PatternSeq preperiod,
                                             PatternSeq period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) {
    throw std::invalid_argument("ultimately periodic sequence needs a period");
  }
}

UltimatelyPeriodicSeq UltimatelyPeriodicSeq::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')' ||
      text.find('(', open + 1) != std::string_view::npos) {
    throw std::invalid_argument("expected pre(period) syntax, got \"" +
                                std::string(text) + "\"");
  }
  return UltimatelyPeriodicSeq(
      PatternSeq::parse(text.substr(0, open)),
      PatternSeq::parse(text.substr(open + 1, text.size() - open - 2)));
}

Pattern UltimatelyPeriodicSeq::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  return period_[(i - preperiod_.size()) % period_.size()];
}

PatternSeq UltimatelyPeriodicSeq::prefix(std::size_t n) const {
  PatternSeq out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

bool UltimatelyPeriodicSeq::hole_fixed_from(std::size_t from) const {
  const std::size_t end =
      std::max(from, preperiod_.size()) + period_.size();
  for (std::size_t i = from; i < end; ++i) {
    if (hole_index(at(i)) != 0) return false;
  }
  return true;
}

UltimatelyPeriodicSeq UltimatelyPeriodicSeq::canonical() const {
  auto period = period_.letters();
  const std::size_t n = period.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = period[i] == period[i - p];
    if (ok) {
      period.resize(p);
      break;
    }
  }
  auto pre = preperiod_.letters();
  while (!pre.empty() && pre.back() == period.back()) {
    pre.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return UltimatelyPeriodicSeq(PatternSeq(std::move(pre)),
                               PatternSeq(std::move(period)));
}

std::string UltimatelyPeriodicSeq::str() const {
  return preperiod_.str() + "(" + period_.str() + ")";
}

bool operator==(const UltimatelyPeriodicSeq& x, const UltimatelyPeriodicSeq& y) {
  const auto cx = x.canonical();
  const auto cy = y.canonical();
  return cx.preperiod_ == cy.preperiod_ && cx.period_ == cy.period_;
}

// ---------------------------------------------------------------------------

PartialWord::PartialWord(std::string symbols) : symbols_(std::move(symbols)) {
  for (char c : symbols_) {
    if (!is_partial_symbol(c)) {
      throw std::invalid_argument(std::string("invalid symbol '") + c +
                                  "' in partial word");
    }
  }
}

std::size_t PartialWord::hole_count() const {
  return static_cast<std::size_t>(
      std::count(symbols_.begin(), symbols_.end(), kHole));
}

std::vector<int> PartialWord::numeric() const {
  std::vector<int> out;
  out.reserve(symbols_.size());
  for (char c : symbols_) out.push_back(c == kHole ? 2 : c - '0');
  return out;
}

PartialWord expand(const PartialWord& y, Pattern g) {
  if (y.hole_count() != 1) {
    throw std::invalid_argument(
        "expand requires exactly one '?', found " +
        std::to_string(y.hole_count()));
  }
  const auto sym = symbols(g);
  std::string out;
  out.reserve(3 * y.size());
  for (int copy = 0; copy < 3; ++copy) {
    for (char c : y.view()) out.push_back(c == kHole ? sym[copy] : c);
  }
  return PartialWord(std::move(out));
}

PartialWord toeplitz_prefix(const PatternSeq& t) {
  PartialWord w{std::string(1, kHole)};
  for (Pattern g : t.letters()) w = expand(w, g);
  return w;
}

UnresolvedHole::UnresolvedHole(std::size_t position)
    : std::runtime_error("hole at position " + std::to_string(position) +
                         " is never filled; a fill symbol is required"),
      position_(position) {}

std::string stewart_prefix(const UltimatelyPeriodicSeq& t, std::size_t len,
                           std::optional<char> fill) {
  if (fill && *fill != '0' && *fill != '1') {
    throw std::invalid_argument("fill symbol must be '0' or '1'");
  }
  // Only the first `len` cells of T(t_0..t_{k-1}) are materialized. The full
  // length and the hole position are tracked separately, which is enough
  // because expansion reads y[j mod L] with j mod L <= j.
  std::string window(std::min<std::size_t>(len, 1), kHole);
  std::size_t full_len = 1;
  std::size_t hole = 0;
  for (std::size_t k = 0; full_len < len || hole < len; ++k) {
    if (full_len >= len && t.hole_fixed_from(k)) {
      if (!fill) throw UnresolvedHole(hole);
      window[hole] = *fill;
      return window;
    }
    const Pattern g = t.at(k);
    const auto sym = symbols(g);
    const std::size_t new_len = full_len * 3;
    std::string next(std::min(new_len, len), kHole);
    for (std::size_t j = 0; j < next.size(); ++j) {
      const std::size_t r = j % full_len;
      next[j] = r == hole ? sym[j / full_len] : window[r];
    }
    hole += static_cast<std::size_t>(hole_index(g)) * full_len;
    full_len = new_len;
    window = std::move(next);
  }
  return window;
}

// ---------------------------------------------------------------------------

GenericPatternSet::GenericPatternSet(std::vector<std::string> patterns)
    : patterns_(std::move(patterns)) {
  if (patterns_.empty()) {
    throw std::invalid_argument("pattern set must be nonempty");
  }
  const std::size_t len = patterns_.front().size();
  for (const auto& p : patterns_) {
    if (p.size() != len) {
      throw std::invalid_argument("all patterns must share one length");
    }
    if (p.find(kHole) == std::string::npos) {
      throw std::invalid_argument("pattern \"" + p + "\" has no '?'");
    }
  }
}

GenericPatternSet GenericPatternSet::stewart() {
  std::vector<std::string> ps;
  for (Pattern p : kAllPatterns) ps.emplace_back(symbols(p));
  return GenericPatternSet(std::move(ps));
}

bool GenericPatternSet::contains(std::string_view p) const {
  return std::find(patterns_.begin(), patterns_.end(), p) != patterns_.end();
}

std::string generic_toeplitz_prefix(const GenericPatternSet& ps,
                                    const std::vector<std::string>& choice,
                                    std::size_t len) {
  if (len == 0) throw std::invalid_argument("length must be at least 1");
  if (choice.empty()) throw std::invalid_argument("choice must be nonempty");
  std::string w(len, kHole);
  for (const auto& p : choice) {
    if (!ps.contains(p)) {
      throw std::invalid_argument("pattern \"" + p + "\" not in the set");
    }
    // The k-th hole of the window is the k-th hole of the infinite word.
    std::size_t k = 0;
    for (char& c : w) {
      if (c == kHole) c = p[k++ % p.size()];
    }
  }
  return w;
}

int hamming(Pattern g, Pattern h) {
  const auto x = symbols(g);
  const auto y = symbols(h);
  int d = 0;
  for (std::size_t i = 0; i < 3; ++i) d += x[i] != y[i];
  return d;
}

PairClass classify_pair(Pattern g, Pattern h) {
  switch (hamming(g, h)) {
    case 0:
    case 3:
      return PairClass::InX;
    case 2:
      return PairClass::InY;
    default:
      throw std::logic_error("Hamming distance 1 between Stewart patterns");
  }
}

std::set<std::string> factors(std::string_view w, std::size_t n,
                              bool boolean_only) {
  if (n > w.size()) throw std::invalid_argument("factor length exceeds word");
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    const auto f = w.substr(i, n);
    if (boolean_only && f.find(kHole) != std::string_view::npos) continue;
    out.emplace(f);
  }
  return out;
}

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  const auto g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num)
                  : std::to_string(num) + "/" + std::to_string(den);
}

PeriodExponent period_exponent(std::string_view w) {
  if (w.empty()) throw std::invalid_argument("empty word has no period");
  // Border array: least period = |w| - longest proper border.
  std::vector<std::size_t> border(w.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  const std::size_t per = w.size() - border[w.size()];
  return {per, Rational::make(w.size(), per)};
}

}  // namespace stewart
