#include "stewart/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "stewart/oracles.hpp"
#include "stewart/words.hpp"

namespace stewart {

namespace {

std::uint64_t pow3(std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= 3;
  return r;
}

/// Distinct boolean length-n factors packed as bits (n <= 63), sorted.
std::vector<std::uint64_t> bit_factors(std::string_view w, std::size_t n) {
  std::vector<std::uint64_t> out;
  if (n == 0 || n > 63 || w.size() < n) return out;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::uint64_t cur = 0;
  std::size_t valid = 0;  // length of the current boolean run
  for (char c : w) {
    if (c == '0' || c == '1') {
      cur = ((cur << 1) | static_cast<std::uint64_t>(c - '0')) & mask;
      ++valid;
      if (valid >= n) out.push_back(cur);
    } else {
      valid = 0;
      cur = 0;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool intersects(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

class Runner {
 public:
  Runner(CheckReport& report, const CheckOptions& options)
      : report_(report), options_(options) {}

  /// Visits every sequence of length `len`, or a seeded sample of them.
  void sweep(std::size_t len, std::size_t default_samples,
             const std::function<void(const PatternSeq&)>& fn) {
    std::uint64_t before = report_.cases;
    if (len <= options_.exhaustive_up_to) {
      for_each_sequence(len, [&](const PatternSeq& t) {
        ++report_.cases;
        fn(t);
      });
      detail("length " + std::to_string(len) + ": " +
             std::to_string(report_.cases - before) + " sequences (exhaustive)");
    } else {
      const std::size_t n = options_.samples.value_or(default_samples);
      report_.sampled = true;
      for (const PatternSeq& t : sample_sequences(len, n, options_.seed + len)) {
        ++report_.cases;
        fn(t);
      }
      detail("length " + std::to_string(len) + ": " + std::to_string(n) +
             " sequences (sampled, seed " + std::to_string(options_.seed + len) + ")");
    }
  }

  void fail(const std::string& witness) {
    if (report_.passed) report_.witness = witness;
    report_.passed = false;
  }

  void detail(const std::string& d) { report_.details.push_back(d); }

  std::size_t len(std::size_t fallback) const { return options_.len.value_or(fallback); }
  std::size_t samples(std::size_t fallback) const {
    return options_.samples.value_or(fallback);
  }
  const CheckOptions& options() const { return options_; }

 private:
  CheckReport& report_;
  const CheckOptions& options_;
};

void check_palindromes(Runner& r) {
  const auto& expected = stewart_palindromes();
  for (std::size_t l = 0; l <= r.len(4); ++l) {
    r.sweep(l, 500, [&](const PatternSeq& t) {
      const auto found = find_palindromes(t);
      for (const auto& p : found) {
        if (!expected.count(p)) r.fail("t=" + t.str() + " has palindrome \"" + p + "\"");
      }
      if (l >= 4 && found != expected) {
        for (const auto& p : expected) {
          if (!found.count(p)) r.fail("t=" + t.str() + " lacks palindrome \"" + p + "\"");
        }
      }
    });
  }
}

void check_cubes(Runner& r) {
  for (std::size_t l = 0; l <= r.len(5); ++l) {
    r.sweep(l, 500, [&](const PatternSeq& t) {
      if (auto c = find_cube(toeplitz_prefix(t).view())) {
        r.fail("t=" + t.str() + " has a cube at " + std::to_string(c->position) +
               " with period " + std::to_string(c->period));
      }
    });
  }
}

void check_critexp(Runner& r) {
  for (std::size_t l = 4; l <= r.len(5); ++l) {
    const Rational expected = Rational::make(pow3(l - 2) - 1, pow3(l - 3));
    r.sweep(l, 200, [&](const PatternSeq& t) {
      const auto i = critexp_witness(t);
      if (!i) {
        r.fail("t=" + t.str() + " has no factor of length 3^(l-2)-1 and period 3^(l-3)");
        return;
      }
      const std::string w = toeplitz_prefix(t).str();
      const auto pe = period_exponent(std::string_view(w).substr(*i, pow3(l - 2) - 1));
      if (!(pe.exponent == expected)) {
        r.fail("t=" + t.str() + " factor at " + std::to_string(*i) + " has exponent " +
               pe.exponent.str() + ", expected " + expected.str());
      }
    });
    r.detail("length " + std::to_string(l) + ": exponent " + expected.str());
  }
}

bool is_square_order(std::uint64_t n) {
  while (n % 3 == 0) n /= 3;
  return n == 1 || n == 2;
}

void check_squares(Runner& r) {
  for (std::size_t l = 0; l <= r.len(5); ++l) {
    const std::uint64_t whole = pow3(l);
    r.sweep(l, 200, [&](const PatternSeq& t) {
      const auto orders = square_orders(toeplitz_prefix(t).view());
      for (auto n : orders) {
        if (!is_square_order(n)) r.fail("t=" + t.str() + " has a square of order " + std::to_string(n));
      }
      for (std::uint64_t n = 1; 36 * n <= whole; ++n) {
        if (is_square_order(n) && !orders.count(n)) {
          r.fail("t=" + t.str() + " lacks a square of order " + std::to_string(n));
        }
      }
    });
  }
}

void check_complexity(Runner& r) {
  for (std::size_t l = 2; l <= r.len(4); ++l) {
    const std::size_t top = pow3(l - 2);
    r.sweep(l, 100, [&](const PatternSeq& t) {
      const std::string w = toeplitz_prefix(t).str();
      PatternSeq ext = t;
      ext.push_back(Pattern::a);
      const std::string wx = toeplitz_prefix(ext).str();
      for (std::size_t n = 1; n <= top; ++n) {
        const auto fs = bit_factors(w, n);
        const auto longer = bit_factors(wx, n + 1);
        std::size_t special = 0;
        for (std::uint64_t x : fs) {
          if (std::binary_search(longer.begin(), longer.end(), x << 1) &&
              std::binary_search(longer.begin(), longer.end(), (x << 1) | 1)) {
            ++special;
          }
        }
        if (fs.size() != 2 * n || special != 2) {
          r.fail("t=" + t.str() + " n=" + std::to_string(n) + ": " +
                 std::to_string(fs.size()) + " factors, " + std::to_string(special) +
                 " right-special");
        }
      }
    });
  }
}

void check_xxyyxx(Runner& r) {
  for (std::size_t l = 0; l <= r.len(5); ++l) {
    r.sweep(l, 100, [&](const PatternSeq& t) {
      if (auto w = find_xxyyxx(toeplitz_prefix(t).view())) {
        r.fail("t=" + t.str() + " has xxyyxx at i=" + std::to_string(w->i) +
               " |x|=" + std::to_string(w->m) + " |y|=" + std::to_string(w->n));
      }
    });
  }
}

void check_ap(Runner& r) {
  for (std::size_t l = 0; l <= r.len(5); ++l) {
    r.sweep(l, 200, [&](const PatternSeq& t) {
      if (auto w = find_ap_alternation(toeplitz_prefix(t).view())) {
        r.fail("t=" + t.str() + " alternates at i=" + std::to_string(w->i) +
               " m=" + std::to_string(w->m));
      }
    });
  }
}

/// Both common-factor claims for one pair, using the DP oracle.
void common_pair_dp(Runner& r, const PatternSeq& t, const PatternSeq& u,
                    const std::string& wt, const std::string& wu) {
  const std::size_t l = t.size();
  const std::size_t lcf = longest_common_factor(wt, wu);
  const auto j = first_non_x_index(t, u);
  if (!j && l >= 2 && lcf < pow3(l - 2)) {
    r.fail("t=" + t.str() + " u=" + u.str() + ": all pairs in X but the longest common factor is " +
           std::to_string(lcf));
  }
  if (j && lcf > pow3(*j + 2)) {
    r.fail("t=" + t.str() + " u=" + u.str() + ": first non-X index " + std::to_string(*j) +
           " but a common factor of length " + std::to_string(lcf));
  }
}

void check_common(Runner& r, CheckReport& report) {
  const std::size_t l = r.len(4);
  if (l < 2) {
    r.detail("length " + std::to_string(l) + ": nothing to check");
    return;
  }
  if (l <= 4) {
    // Exhaustive over all pairs: compare factor sets at the threshold lengths.
    std::vector<PatternSeq> seqs;
    for_each_sequence(l, [&](const PatternSeq& t) { seqs.push_back(t); });
    std::vector<std::vector<std::uint64_t>> at_threshold;
    std::vector<std::vector<std::vector<std::uint64_t>>> above;  // [t][j]
    for (const auto& t : seqs) {
      const std::string w = toeplitz_prefix(t).str();
      at_threshold.push_back(bit_factors(w, pow3(l - 2)));
      std::vector<std::vector<std::uint64_t>> per_j;
      for (std::size_t j = 0; j + 2 < l; ++j) per_j.push_back(bit_factors(w, pow3(j + 2) + 1));
      above.push_back(std::move(per_j));
    }
    std::uint64_t in_x = 0;
    for (std::size_t a = 0; a < seqs.size(); ++a) {
      for (std::size_t b = 0; b < seqs.size(); ++b) {
        ++report.cases;
        const auto j = first_non_x_index(seqs[a], seqs[b]);
        if (!j) {
          ++in_x;
          if (!intersects(at_threshold[a], at_threshold[b])) {
            r.fail("t=" + seqs[a].str() + " u=" + seqs[b].str() +
                   ": all pairs in X but no common factor of length " +
                   std::to_string(pow3(l - 2)));
          }
        } else if (*j + 2 < l && intersects(above[a][*j], above[b][*j])) {
          r.fail("t=" + seqs[a].str() + " u=" + seqs[b].str() + ": first non-X index " +
                 std::to_string(*j) + " but a common factor of length " +
                 std::to_string(pow3(*j + 2) + 1));
        }
      }
    }
    r.detail("length " + std::to_string(l) + ": " + std::to_string(seqs.size() * seqs.size()) +
             " pairs (exhaustive, " + std::to_string(in_x) + " with all pairs in X)");
  }
  // Direct longest-common-factor computation on seeded random pairs.
  const std::size_t n = r.samples(l <= 4 ? 100000 : 2000);
  const auto ts = sample_sequences(l, n, r.options().seed);
  const auto us = sample_sequences(l, n, r.options().seed + 1);
  for (std::size_t k = 0; k < n; ++k) {
    ++report.cases;
    common_pair_dp(r, ts[k], us[k], toeplitz_prefix(ts[k]).str(), toeplitz_prefix(us[k]).str());
  }
  report.sampled = true;
  r.detail("length " + std::to_string(l) + ": " + std::to_string(n) +
           " pairs by dynamic programming (sampled, seed " + std::to_string(r.options().seed) + ")");
}

UltimatelyPeriodicSeq random_periodic(std::mt19937_64& rng, std::size_t max_pre,
                                      std::size_t max_per) {
  std::uniform_int_distribution<std::size_t> letter(0, kAllPatterns.size() - 1);
  std::uniform_int_distribution<std::size_t> pre_len(0, max_pre);
  std::uniform_int_distribution<std::size_t> per_len(1, std::max<std::size_t>(max_per, 1));
  std::vector<Pattern> pre(pre_len(rng)), per(per_len(rng));
  for (auto& p : pre) p = kAllPatterns[letter(rng)];
  for (auto& p : per) p = kAllPatterns[letter(rng)];
  return UltimatelyPeriodicSeq(PatternSeq(pre), PatternSeq(per));
}

void check_automatic(Runner& r, CheckReport& report) {
  const std::size_t bound = r.len(3);
  std::vector<UltimatelyPeriodicSeq> cases = {UltimatelyPeriodicSeq::parse("(ad)"),
                                              UltimatelyPeriodicSeq::parse("(c)")};
  for (Pattern p : kAllPatterns) {
    cases.emplace_back(PatternSeq(), PatternSeq({p}));
  }
  std::mt19937_64 rng(r.options().seed);
  const std::size_t n = r.samples(20);
  for (std::size_t k = 0; k < n; ++k) {
    cases.push_back(random_periodic(rng, bound > 1 ? bound - 1 : 0, bound));
  }
  report.sampled = n > 0;
  for (const auto& t : cases) {
    ++report.cases;
    const bool needs_fill = t.hole_fixed_from(t.preperiod().size());
    for (int fill : needs_fill ? std::vector<int>{0, 1} : std::vector<int>{-1}) {
      const std::optional<int> f = fill < 0 ? std::nullopt : std::optional<int>(fill);
      const Dfao m = dfao_from_periodic(t, f, r.options().limits);
      const std::string word =
          stewart_prefix(t, 243, f ? std::optional<char>(static_cast<char>('0' + *f)) : std::nullopt);
      for (std::uint64_t pos = 0; pos < word.size(); ++pos) {
        const auto v = m.eval_values(std::vector<std::uint64_t>{pos});
        if (!v || *v != word[pos] - '0') {
          r.fail("t=" + t.str() + ": automaton disagrees with the word at " + std::to_string(pos));
          break;
        }
      }
      const auto back = reconstruct_pattern_seq(m);
      if (!(back == t)) r.fail("t=" + t.str() + " reconstructed as " + back.str());
    }
  }
  const auto trace = trace_pattern_seq(dfao_from_periodic(UltimatelyPeriodicSeq::parse("(ad)")));
  if (trace.letters != std::vector<Pattern>{Pattern::a, Pattern::d} || trace.cycle_start != 0) {
    r.fail("(ad) walk does not label two states a, d and return to the start");
  }
  r.detail(std::to_string(cases.size()) + " sequences, preperiod <= " +
           std::to_string(bound > 1 ? bound - 1 : 0) + ", period <= " + std::to_string(bound) +
           " (seed " + std::to_string(r.options().seed) + ")");
}

void check_thm3(Runner& r, CheckReport& report) {
  const std::size_t l = r.len(3);
  if (l < 2) {
    r.detail("length " + std::to_string(l) + ": nothing to check");
    return;
  }
  const std::size_t top = pow3(l - 2);
  std::optional<std::string> optimal;
  for_each_sequence(l, [&](const PatternSeq& t) {
    const std::string wt = toeplitz_prefix(t).str();
    std::vector<std::vector<std::uint64_t>> small;
    for (std::size_t n = 1; n <= top + 1; ++n) small.push_back(bit_factors(wt, n));
    for_each_sequence(2, [&](const PatternSeq& tail) {
      ++report.cases;
      PatternSeq u = t;
      for (Pattern p : tail.letters()) u.push_back(p);
      const std::string wu = toeplitz_prefix(u).str();
      for (std::size_t n = 1; n <= top + 1; ++n) {
        const auto large = bit_factors(wu, n);
        const bool covered =
            std::includes(small[n - 1].begin(), small[n - 1].end(), large.begin(), large.end());
        if (n <= top && !covered) {
          r.fail("t=" + t.str() + " u=" + u.str() + ": a length-" + std::to_string(n) +
                 " factor of T(u) is missing from T(t)");
        }
        if (n == top + 1 && !covered && !optimal) optimal = "t=" + t.str() + " u=" + u.str();
      }
    });
  });
  r.detail("length " + std::to_string(l) + ", extensions by 2: coverage for n <= " +
           std::to_string(top));
  if (optimal) {
    r.detail("bound is tight at n=" + std::to_string(top + 1) + ": " + *optimal);
  } else {
    r.fail("no pair fails coverage at n=" + std::to_string(top + 1));
  }
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {"palindromes", "cubes",  "critexp", "squares",
                                               "complexity",  "xxyyxx", "common",  "automatic",
                                               "ap",          "thm3"};
  return ids;
}

CheckReport run_check(std::string_view id, const CheckOptions& options) {
  CheckReport report;
  report.id = std::string(id);
  report.seed = options.seed;
  Runner r(report, options);
  if (id == "palindromes") {
    check_palindromes(r);
  } else if (id == "cubes") {
    check_cubes(r);
  } else if (id == "critexp") {
    check_critexp(r);
  } else if (id == "squares") {
    check_squares(r);
  } else if (id == "complexity") {
    check_complexity(r);
  } else if (id == "xxyyxx") {
    check_xxyyxx(r);
  } else if (id == "common") {
    check_common(r, report);
  } else if (id == "automatic") {
    check_automatic(r, report);
  } else if (id == "ap") {
    check_ap(r);
  } else if (id == "thm3") {
    check_thm3(r, report);
  } else {
    throw std::invalid_argument("unknown check '" + std::string(id) + "'");
  }
  return report;
}

std::string CheckReport::text() const {
  std::ostringstream os;
  os << "check " << id << ": " << (passed ? "PASS" : "FAIL") << " (" << cases << " cases";
  if (sampled) os << ", seed " << seed;
  os << ")\n";
  for (const auto& d : details) os << "  " << d << '\n';
  if (witness) os << "  witness: " << *witness << '\n';
  return os.str();
}

nlohmann::json CheckReport::json() const {
  nlohmann::json j;
  j["check"] = id;
  j["status"] = passed ? "pass" : "fail";
  j["cases"] = cases;
  if (sampled) j["seed"] = seed;
  j["details"] = details;
  if (witness) j["witness"] = *witness;
  return j;
}

}  // namespace stewart
