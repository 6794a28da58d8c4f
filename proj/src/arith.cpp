#include "stewart/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "stewart/errors.hpp"

namespace stewart {

namespace {

/// Builds a DFA from a step function over digit tuples; state 0 is initial
/// and `dead` (if any) must be one of the states.
template <typename Step>
Dfa table_dfa(std::vector<int> bases, std::size_t num_states, Step step,
              std::vector<char> accepting) {
  Alphabet alphabet(std::move(bases));
  const std::size_t k = alphabet.size();
  std::vector<State> delta(num_states * k);
  for (std::size_t s = 0; s < num_states; ++s) {
    for (std::size_t c = 0; c < k; ++c) {
      delta[s * k + c] = step(static_cast<State>(s), alphabet.decode(c));
    }
  }
  return minimize(Dfa(std::move(alphabet), std::move(delta), std::move(accepting)));
}

}  // namespace

Dfa rel_eq(int base) {
  // 0 = equal so far, 1 = dead
  return table_dfa(
      {base, base}, 2,
      [](State s, const std::vector<int>& d) -> State {
        return s == 0 && d[0] == d[1] ? 0 : 1;
      },
      {1, 0});
}

namespace {

// Comparison of the digits read so far: 0 equal, 1 x<y, 2 x>y. The most
// significant differing digit is read last, so it overrides.
Dfa compare_dfa(int base, std::vector<char> accepting) {
  return table_dfa(
      {base, base}, 3,
      [](State s, const std::vector<int>& d) -> State {
        if (d[0] < d[1]) return 1;
        if (d[0] > d[1]) return 2;
        return s;
      },
      std::move(accepting));
}

}  // namespace

Dfa rel_lt(int base) { return compare_dfa(base, {0, 1, 0}); }

Dfa rel_leq(int base) { return compare_dfa(base, {1, 1, 0}); }

Dfa rel_add(int base) {
  // 0/1 = carry, 2 = dead
  return table_dfa(
      {base, base, base}, 3,
      [base](State s, const std::vector<int>& d) -> State {
        if (s == 2) return 2;
        const int sum = d[0] + d[1] + static_cast<int>(s);
        if (sum % base != d[2]) return 2;
        return static_cast<State>(sum / base);
      },
      {1, 0, 0});
}

Dfa rel_const(std::uint64_t value, int base) {
  const auto digits = encode(value, base).digits;
  const std::size_t n = digits.size();
  // States 0..n track matched digits; n+1 is dead; state n loops on zero.
  std::vector<char> accepting(n + 2, 0);
  accepting[n] = 1;
  return table_dfa(
      {base}, n + 2,
      [&](State s, const std::vector<int>& d) -> State {
        if (s == n + 1) return s;
        if (s == n) return d[0] == 0 ? s : static_cast<State>(n + 1);
        return d[0] == digits[s] ? s + 1 : static_cast<State>(n + 1);
      },
      std::move(accepting));
}

Dfa mul_const(std::uint64_t c, int base, const Limits& limits) {
  if (c == 0) throw std::invalid_argument("multiplier must be positive");
  const std::vector<int> three{base, base, base};
  const Dfa add = rel_add(base);
  // relation tracks (x, y) with y = m * x; start at m = 1.
  Dfa rel = rel_eq(base);
  int top = 63;
  while (((c >> top) & 1U) == 0) --top;
  const std::array<std::size_t, 2> rel_wiring{0, 1};  // (x, z) over (x, z, y)
  for (int bit = top - 1; bit >= 0; --bit) {
    // z = m x, y = z + z
    const std::array<std::size_t, 3> dbl{1, 1, 2};
    rel = project(combine(rel, rel_wiring, add, dbl, three, BoolOp::And, limits),
                  1, limits);
    if ((c >> bit) & 1U) {
      // z = m x, y = z + x
      const std::array<std::size_t, 3> inc{1, 0, 2};
      rel = project(
          combine(rel, rel_wiring, add, inc, three, BoolOp::And, limits), 1,
          limits);
    }
  }
  return rel;
}

Dfa div_const(std::uint64_t c, int base, const Limits& limits) {
  if (c == 0) throw std::invalid_argument("divisor must be positive");
  // Tracks (x, y, w, r): w = c y, w + r = x, r < c.
  const std::vector<int> four{base, base, base, base};
  const std::vector<int> two{base, base};
  const Dfa below = project(
      combine(rel_lt(base), std::array<std::size_t, 2>{0, 1},
              rel_const(c, base), std::array<std::size_t, 1>{1}, two,
              BoolOp::And, limits),
      1, limits);
  Dfa rel = combine(mul_const(c, base, limits), std::array<std::size_t, 2>{1, 2},
                    rel_add(base), std::array<std::size_t, 3>{2, 3, 0}, four,
                    BoolOp::And, limits);
  rel = combine(rel, std::array<std::size_t, 4>{0, 1, 2, 3}, below,
                std::array<std::size_t, 1>{3}, four, BoolOp::And, limits);
  rel = project(rel, 3, limits);
  return project(rel, 2, limits);
}

// ---------------------------------------------------------------------------

namespace {

struct Nfa {
  std::vector<std::vector<State>> eps;
  std::vector<std::vector<std::pair<std::size_t, State>>> edges;

  State add_state() {
    eps.emplace_back();
    edges.emplace_back();
    return static_cast<State>(eps.size() - 1);
  }
};

struct Fragment {
  State start;
  State accept;
};

class RegexParser {
 public:
  RegexParser(const RegexOverTuples& r, Nfa& nfa)
      : text_(r.pattern), alphabet_(r.bases), nfa_(nfa) {}

  Fragment parse() {
    Fragment f = parse_union();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in regex", 0, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Fragment epsilon() {
    const State s = nfa_.add_state();
    const State t = nfa_.add_state();
    nfa_.eps[s].push_back(t);
    return {s, t};
  }

  Fragment parse_union() {
    Fragment f = parse_concat();
    while (peek() == '|') {
      ++pos_;
      Fragment g = parse_concat();
      const State s = nfa_.add_state();
      const State t = nfa_.add_state();
      nfa_.eps[s] = {f.start, g.start};
      nfa_.eps[f.accept].push_back(t);
      nfa_.eps[g.accept].push_back(t);
      f = {s, t};
    }
    return f;
  }

  Fragment parse_concat() {
    std::optional<Fragment> f;
    for (char c = peek(); c != '\0' && c != '|' && c != ')'; c = peek()) {
      Fragment g = parse_repeat();
      if (f) {
        nfa_.eps[f->accept].push_back(g.start);
        f->accept = g.accept;
      } else {
        f = g;
      }
    }
    return f ? *f : epsilon();
  }

  Fragment parse_repeat() {
    Fragment f = parse_atom();
    for (char c = peek(); c == '*' || c == '+' || c == '?'; c = peek()) {
      ++pos_;
      const State s = nfa_.add_state();
      const State t = nfa_.add_state();
      nfa_.eps[s].push_back(f.start);
      nfa_.eps[f.accept].push_back(t);
      if (c != '+') nfa_.eps[s].push_back(t);
      if (c != '?') nfa_.eps[f.accept].push_back(f.start);
      f = {s, t};
    }
    return f;
  }

  int read_digit_value() {
    skip_ws();
    const std::size_t start = pos_;
    int v = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (start == pos_) fail("expected a digit");
    return v;
  }

  Fragment literal(const std::vector<int>& digits, std::size_t at) {
    if (digits.size() != alphabet_.num_tracks()) {
      throw ParseError("tuple has " + std::to_string(digits.size()) +
                           " components, expected " +
                           std::to_string(alphabet_.num_tracks()),
                       0, at + 1);
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] >= alphabet_.bases()[i]) {
        throw ParseError("digit " + std::to_string(digits[i]) +
                             " out of range for base " +
                             std::to_string(alphabet_.bases()[i]),
                         0, at + 1);
      }
    }
    const State s = nfa_.add_state();
    const State t = nfa_.add_state();
    nfa_.edges[s].emplace_back(alphabet_.encode(digits), t);
    return {s, t};
  }

  Fragment parse_atom() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      Fragment f = parse_union();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (c == '[') {
      ++pos_;
      std::vector<int> digits{read_digit_value()};
      while (peek() == ',') {
        ++pos_;
        digits.push_back(read_digit_value());
      }
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      return literal(digits, at);
    }
    if (c >= '0' && c <= '9') {
      ++pos_;
      return literal({c - '0'}, at);
    }
    fail(c == '\0' ? "unexpected end" : std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  Alphabet alphabet_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

void closure(const Nfa& nfa, std::vector<State>& set) {
  std::vector<char> in(nfa.eps.size(), 0);
  for (State s : set) in[s] = 1;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (State t : nfa.eps[set[i]]) {
      if (!in[t]) {
        in[t] = 1;
        set.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
}

}  // namespace

Dfa compile_regex(const RegexOverTuples& r, const Limits& limits) {
  Nfa nfa;
  const Fragment f = RegexParser(r, nfa).parse();
  Alphabet alphabet(r.bases);
  const std::size_t k = alphabet.size();

  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  auto intern = [&](std::vector<State> set) {
    closure(nfa, set);
    auto [it, inserted] = ids.emplace(set, static_cast<State>(sets.size()));
    if (inserted) {
      sets.push_back(std::move(set));
      if (sets.size() > limits.state_cap) throw StateCapExceeded(limits.state_cap);
    }
    return it->second;
  };
  intern({f.start});
  std::vector<State> delta;
  std::vector<char> accepting;
  for (std::size_t head = 0; head < sets.size(); ++head) {
    const auto current = sets[head];
    accepting.push_back(std::binary_search(current.begin(), current.end(), f.accept));
    std::vector<std::vector<State>> targets(k);
    for (State s : current) {
      for (const auto& [c, t] : nfa.edges[s]) targets[c].push_back(t);
    }
    delta.resize((head + 1) * k);
    for (std::size_t c = 0; c < k; ++c) {
      delta[head * k + c] = intern(std::move(targets[c]));
    }
  }
  return normalize_padding(
      Dfa(std::move(alphabet), std::move(delta), std::move(accepting)));
}

// ---------------------------------------------------------------------------

const std::vector<BuiltinRegex>& builtin_regexes() {
  static const std::vector<BuiltinRegex> table = {
      {"pref", {7, 7},
       "([1,1]|[2,2]|[3,3]|[4,4]|[5,5]|[6,6])*"
       "([0,1]|[0,2]|[0,3]|[0,4]|[0,5]|[0,6])*[0,0]*"},
      {"link", {3, 7}, "([0,1]|[0,2]|[0,3]|[0,4]|[0,5]|[0,6])*[1,0][0,0]*"},
      {"bnd", {3, 3}, "([0,0]|[1,0]|[2,0])*[0,1][0,0]*|[0,0]*[1,1][0,0]*"},
      {"power3", {3}, "0*10*"},
      {"differ", {7, 7, 3},
       "([1,1,0]|[1,4,0]|[1,5,0]|[2,2,0]|[2,3,0]|[2,6,0]|"
       "[3,2,0]|[3,3,0]|[3,6,0]|[4,1,0]|[4,4,0]|[4,5,0]|"
       "[5,1,0]|[5,4,0]|[5,5,0]|[6,2,0]|[6,3,0]|[6,6,0])*"
       "([1,2,1]|[1,3,1]|[1,6,1]|[2,1,1]|[2,4,1]|[2,5,1]|"
       "[3,1,1]|[3,4,1]|[3,5,1]|[4,2,1]|[4,3,1]|[4,6,1]|"
       "[5,2,1]|[5,3,1]|[5,6,1]|[6,1,1]|[6,4,1]|[6,5,1])"
       "([1,1,0]|[1,2,0]|[1,3,0]|[1,4,0]|[1,5,0]|[1,6,0]|"
       "[2,1,0]|[2,2,0]|[2,3,0]|[2,4,0]|[2,5,0]|[2,6,0]|"
       "[3,1,0]|[3,2,0]|[3,3,0]|[3,4,0]|[3,5,0]|[3,6,0]|"
       "[4,1,0]|[4,2,0]|[4,3,0]|[4,4,0]|[4,5,0]|[4,6,0]|"
       "[5,1,0]|[5,2,0]|[5,3,0]|[5,4,0]|[5,5,0]|[5,6,0]|"
       "[6,1,0]|[6,2,0]|[6,3,0]|[6,4,0]|[6,5,0]|[6,6,0])*"
       "[0,0,0]*"},
  };
  return table;
}

namespace {

Dfa compile_builtin(std::string_view name) {
  for (const auto& b : builtin_regexes()) {
    if (b.name == name) {
      return compile_regex({b.bases, std::string(b.pattern)});
    }
  }
  throw std::logic_error("unknown builtin " + std::string(name));
}

}  // namespace

Dfa builtin_pref() { return compile_builtin("pref"); }
Dfa builtin_link() { return compile_builtin("link"); }
Dfa builtin_bnd() { return compile_builtin("bnd"); }
Dfa builtin_power3() { return compile_builtin("power3"); }
Dfa builtin_differ() { return compile_builtin("differ"); }

}  // namespace stewart
