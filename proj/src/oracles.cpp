#include "stewart/oracles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <stdexcept>

#include "stewart/stewart_automaton.hpp"

namespace stewart {

namespace {

bool is_bool(char c) { return c == '0' || c == '1'; }

std::size_t pow3(std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= 3;
  return r;
}

void require_complexity_range(const PatternSeq& t, std::size_t n) {
  if (t.size() < 2 || n < 1 || n > pow3(t.size() - 2)) {
    throw std::invalid_argument("n must lie in [1, 3^(|t|-2)]");
  }
}

/// Length of the run of boolean positions j >= i with w[j] == w[j+p].
/// Calls visit(start, run_length) for every maximal run on diagonal p.
template <typename Visit>
void diagonal_runs(std::string_view w, std::size_t p, Visit visit) {
  std::size_t run = 0;
  for (std::size_t j = 0; j + p < w.size(); ++j) {
    if (is_bool(w[j]) && w[j] == w[j + p]) {
      ++run;
    } else {
      if (run) visit(j - run, run);
      run = 0;
    }
  }
  if (run) visit(w.size() - p - run, run);
}

/// lce[a * n + b]: longest common boolean extension of w[a..] and w[b..].
std::vector<std::uint16_t> lce_table(std::string_view w) {
  const std::size_t n = w.size();
  std::vector<std::uint16_t> lce((n + 1) * (n + 1), 0);
  for (std::size_t a = n; a-- > 0;) {
    for (std::size_t b = n; b-- > 0;) {
      if (is_bool(w[a]) && w[a] == w[b]) {
        lce[a * (n + 1) + b] = static_cast<std::uint16_t>(lce[(a + 1) * (n + 1) + b + 1] + 1);
      }
    }
  }
  return lce;
}

}  // namespace

void for_each_sequence(std::size_t len, const std::function<void(const PatternSeq&)>& fn) {
  std::vector<std::size_t> idx(len, 0);
  std::vector<Pattern> letters(len, Pattern::a);
  while (true) {
    fn(PatternSeq(letters));
    std::size_t k = len;
    while (k > 0) {
      --k;
      if (++idx[k] < kAllPatterns.size()) {
        letters[k] = kAllPatterns[idx[k]];
        break;
      }
      idx[k] = 0;
      letters[k] = kAllPatterns[0];
      if (k == 0) return;
    }
    if (len == 0) return;
  }
}

std::vector<PatternSeq> sample_sequences(std::size_t len, std::size_t count,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, kAllPatterns.size() - 1);
  std::vector<PatternSeq> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Pattern> letters(len);
    for (auto& p : letters) p = kAllPatterns[pick(rng)];
    out.emplace_back(std::move(letters));
  }
  return out;
}

std::optional<std::uint64_t> sequence_count(std::size_t len) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (r > UINT64_MAX / 6) return std::nullopt;
    r *= 6;
  }
  return r;
}

std::set<std::string> find_palindromes(const PatternSeq& t) {
  const std::string w = toeplitz_prefix(t).str();
  std::set<std::string> out{""};
  const std::size_t n = w.size();
  // Center c sits on symbol c/2 when c is even, between two symbols when odd.
  for (std::size_t c = 0; c + 1 < 2 * n; ++c) {
    std::size_t lo = c / 2;
    std::size_t hi = lo + c % 2;
    while (hi < n && w[lo] == w[hi]) {
      out.insert(w.substr(lo, hi - lo + 1));
      if (lo == 0) break;
      --lo;
      ++hi;
    }
  }
  return out;
}

const std::set<std::string>& stewart_palindromes() {
  static const std::set<std::string> s = {
      "",      "0",      "1",      "?",       "00",      "11",
      "010",   "101",    "0110",   "1001",    "00100",   "11011",
      "010010", "101101", "0110110", "1001001"};
  return s;
}

std::optional<Repetition> find_cube(std::string_view w) {
  std::optional<Repetition> best;
  for (std::size_t p = 1; 3 * p <= w.size(); ++p) {
    diagonal_runs(w, p, [&](std::size_t start, std::size_t run) {
      if (run >= 2 * p && (!best || start < best->position)) best = Repetition{start, p};
    });
  }
  return best;
}

std::optional<std::size_t> critexp_witness(const PatternSeq& t) {
  if (t.size() < 4) throw std::invalid_argument("critexp needs |t| >= 4");
  const std::string w = toeplitz_prefix(t).str();
  const std::size_t p = pow3(t.size() - 3);
  const std::size_t len = 3 * p - 1;
  std::optional<std::size_t> found;
  diagonal_runs(w, p, [&](std::size_t start, std::size_t run) {
    if (!found && run >= len - p) found = start;
  });
  return found;
}

bool verify_critexp(const PatternSeq& t) { return critexp_witness(t).has_value(); }

std::set<std::size_t> square_orders(std::string_view w) {
  std::set<std::size_t> out;
  for (std::size_t p = 1; 2 * p <= w.size(); ++p) {
    bool found = false;
    diagonal_runs(w, p, [&](std::size_t, std::size_t run) { found = found || run >= p; });
    if (found) out.insert(p);
  }
  return out;
}

std::size_t boolean_factor_count(const PatternSeq& t, std::size_t n) {
  require_complexity_range(t, n);
  return factors(toeplitz_prefix(t).view(), n, true).size();
}

std::set<std::string> right_special_in(std::string_view w, std::size_t n) {
  const auto longer = factors(w, n + 1, true);
  std::set<std::string> out;
  for (const auto& x : factors(w, n, true)) {
    if (longer.count(x + '0') && longer.count(x + '1')) out.insert(x);
  }
  return out;
}

std::set<std::string> right_special(const PatternSeq& t, std::size_t n) {
  require_complexity_range(t, n);
  PatternSeq ext = t;
  ext.push_back(Pattern::a);
  const auto base = factors(toeplitz_prefix(t).view(), n, true);
  std::set<std::string> out;
  for (const auto& x : right_special_in(toeplitz_prefix(ext).view(), n)) {
    if (base.count(x)) out.insert(x);
  }
  return out;
}

std::optional<XxyyxxWitness> find_xxyyxx(std::string_view w) {
  const std::size_t len = w.size();
  if (len < 4) return std::nullopt;
  const auto lce = lce_table(w);
  auto ext = [&](std::size_t a, std::size_t b) { return lce[a * (len + 1) + b]; };
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t m = 1; i + 4 * m <= len; ++m) {
      if (ext(i, i + m) < m) continue;
      for (std::size_t n = 0; i + 4 * m + 2 * n <= len; ++n) {
        if (ext(i, i + 2 * m + 2 * n) < 2 * m) continue;
        if (n > 0 && ext(i + 2 * m, i + 2 * m + n) < n) continue;
        return XxyyxxWitness{i, m, n};
      }
    }
  }
  return std::nullopt;
}

std::size_t longest_common_factor(std::string_view w1, std::string_view w2) {
  std::vector<std::size_t> prev(w2.size() + 1, 0), cur(w2.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= w1.size(); ++i) {
    for (std::size_t j = 1; j <= w2.size(); ++j) {
      const char a = w1[i - 1];
      cur[j] = is_bool(a) && a == w2[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

std::optional<ApWitness> find_ap_alternation(std::string_view w) {
  for (std::size_t m = 1; 4 * m < w.size(); ++m) {
    for (std::size_t i = 0; i + 4 * m < w.size(); ++i) {
      const char a = w[i];
      const char b = w[i + m];
      if (!is_bool(a) || !is_bool(b) || a == b) continue;
      if (w[i + 2 * m] == a && w[i + 4 * m] == a && w[i + 3 * m] == b) {
        return ApWitness{i, m};
      }
    }
  }
  return std::nullopt;
}

bool check_factor_coverage(const PatternSeq& t, const PatternSeq& u, std::size_t n) {
  if (u.size() < t.size() || u.prefix(t.size()) != t) {
    throw std::invalid_argument("t must be a prefix of u");
  }
  const auto small = factors(toeplitz_prefix(t).view(), n, true);
  const auto large = factors(toeplitz_prefix(u).view(), n, true);
  return std::includes(small.begin(), small.end(), large.begin(), large.end());
}

std::optional<std::size_t> first_non_x_index(const PatternSeq& t, const PatternSeq& u) {
  if (t.size() != u.size()) throw std::invalid_argument("sequences must have equal length");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (classify_pair(t[i], u[i]) != PairClass::InX) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

/// Accepts t_0..t_{k-1} 0^j for all k, j: the zero-padded prefixes of t.
Dfa prefix_recognizer(const UltimatelyPeriodicSeq& t) {
  const std::size_t pre = t.preperiod().size();
  const std::size_t per = t.period().size();
  const std::size_t positions = pre + per;
  const auto zeros = static_cast<State>(positions);
  const auto dead = static_cast<State>(positions + 1);
  constexpr std::size_t k = 7;
  std::vector<State> delta((positions + 2) * k, dead);
  std::vector<char> accepting(positions + 2, 1);
  accepting[dead] = 0;
  for (std::size_t p = 0; p < positions; ++p) {
    const std::size_t next = p + 1 < positions ? p + 1 : pre;
    delta[p * k + static_cast<std::size_t>(digit(t.at(p)))] = static_cast<State>(next);
    delta[p * k] = zeros;
  }
  delta[zeros * k] = zeros;
  return Dfa(Alphabet({7}), std::move(delta), std::move(accepting));
}

}  // namespace

Dfao dfao_from_periodic(const UltimatelyPeriodicSeq& t, std::optional<int> fill,
                        const Limits& limits) {
  if (fill && *fill != 0 && *fill != 1) throw std::invalid_argument("fill must be 0 or 1");
  const Dfa prefixes = prefix_recognizer(t);
  const std::vector<int> bases = {7, 3};
  const std::size_t first[] = {0};
  const std::size_t both[] = {0, 1};
  std::array<Dfa, 2> value_sets = {Dfa::empty({3}), Dfa::empty({3})};
  for (int v = 0; v < 2; ++v) {
    const Dfa out = output_language(stewart_automaton(), v);
    const Dfa joint = combine(prefixes, first, out, both, bases, BoolOp::And, limits);
    value_sets[static_cast<std::size_t>(v)] = project(joint, 0, limits);
  }
  const Dfa& zero = value_sets[0];
  const Dfa& one = value_sets[1];

  // Product of the two recognizers, explored breadth-first.
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> states;
  std::vector<std::uint64_t> witness;  // a position whose digits reach the state
  std::vector<std::uint64_t> weight;   // 3^(BFS depth)
  std::vector<State> delta;
  std::vector<int> outputs;
  auto intern = [&](State a, State b, std::uint64_t pos, std::uint64_t w) {
    auto [it, inserted] = ids.emplace(std::make_pair(a, b), static_cast<State>(states.size()));
    if (inserted) {
      if (states.size() >= limits.state_cap) throw StateCapExceeded(limits.state_cap);
      states.emplace_back(a, b);
      witness.push_back(pos);
      weight.push_back(w);
    }
    return it->second;
  };
  intern(zero.initial(), one.initial(), 0, 1);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [a, b] = states[i];
    const bool is0 = zero.accepting(a);
    const bool is1 = one.accepting(b);
    if (is0 && is1) throw std::logic_error("position with two values");
    if (!is0 && !is1) {
      if (!fill) throw UnresolvedHole(static_cast<std::size_t>(witness[i]));
      outputs.push_back(*fill);
    } else {
      outputs.push_back(is1 ? 1 : 0);
    }
    for (std::size_t c = 0; c < 3; ++c) {
      delta.push_back(intern(zero.next(a, c), one.next(b, c), witness[i] + c * weight[i],
                             weight[i] * 3));
    }
  }
  return minimize(Dfao(Alphabet({3}), std::move(delta), std::move(outputs)));
}

ReconstructionTrace trace_pattern_seq(const Dfao& m) {
  if (m.bases() != std::vector<int>{3}) {
    throw std::invalid_argument("expected a single-track base-3 automaton");
  }
  auto out = [&](State s, std::size_t d0, std::size_t d1) -> std::optional<int> {
    State q = m.next(s, d0);
    if (q == kNoState) return std::nullopt;
    q = m.next(q, d1);
    if (q == kNoState) return std::nullopt;
    return m.output(q);
  };
  std::map<State, std::size_t> seen;
  std::vector<Pattern> letters;
  State s = m.initial();
  while (!seen.count(s)) {
    seen[s] = letters.size();
    std::string sym(3, kHole);
    int holes = 0;
    std::size_t hole_digit = 0;
    for (std::size_t d0 = 0; d0 < 3; ++d0) {
      std::set<int> values;
      for (std::size_t d1 = 0; d1 < 3; ++d1) {
        const auto v = out(s, d0, d1);
        values.insert(v ? *v : -1);
      }
      if (values.size() == 1 && (*values.begin() == 0 || *values.begin() == 1)) {
        sym[d0] = static_cast<char>('0' + *values.begin());
      } else {
        ++holes;
        hole_digit = d0;
      }
    }
    std::optional<Pattern> g;
    for (Pattern p : kAllPatterns) {
      if (symbols(p) == sym) g = p;
    }
    if (holes != 1 || !g) throw std::invalid_argument("not a Stewart word");
    letters.push_back(*g);
    s = m.next(s, hole_digit);
    if (s == kNoState) throw std::invalid_argument("not a Stewart word");
  }
  ReconstructionTrace trace;
  trace.states.resize(letters.size());
  for (const auto& [state, index] : seen) trace.states[index] = state;
  trace.letters = std::move(letters);
  trace.cycle_start = seen.at(s);
  return trace;
}

UltimatelyPeriodicSeq reconstruct_pattern_seq(const Dfao& m) {
  const ReconstructionTrace tr = trace_pattern_seq(m);
  const auto cut = tr.letters.begin() + static_cast<std::ptrdiff_t>(tr.cycle_start);
  PatternSeq pre(std::vector<Pattern>(tr.letters.begin(), cut));
  PatternSeq per(std::vector<Pattern>(cut, tr.letters.end()));
  return UltimatelyPeriodicSeq(std::move(pre), std::move(per)).canonical();
}

}  // namespace stewart
