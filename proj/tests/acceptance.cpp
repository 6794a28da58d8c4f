// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stewart/automata.hpp"
#include "stewart/checks.hpp"
#include "stewart/numeration.hpp"
#include "stewart/oracles.hpp"
#include "stewart/prover.hpp"
#include "stewart/script.hpp"
#include "stewart/stewart_automaton.hpp"
#include "stewart/walnut_format.hpp"
#include "stewart/words.hpp"

using namespace stewart;

namespace {

constexpr double kQueryBudgetMs = 5 * 60 * 1000.0;
constexpr std::size_t kQueryStateCap = 1'000'000;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> lsd_digits(std::uint64_t v, int base) {
  std::vector<int> out;
  for (; v; v /= base) out.push_back(static_cast<int>(v % base));
  return out;
}

// Walks the automaton letter by letter instead of going through eval().
std::optional<int> traverse(const Dfao& m, const PatternSeq& t, std::uint64_t n) {
  std::vector<int> dt(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) dt[i] = digit(t[i]);
  std::vector<int> dn = lsd_digits(n, 3);
  const std::size_t len = std::max(dt.size(), dn.size());
  dt.resize(len, 0);
  dn.resize(len, 0);
  State s = m.initial();
  for (std::size_t i = 0; i < len && s != kNoState; ++i) {
    const int letter[2] = {dt[i], dn[i]};
    s = m.next(s, m.alphabet().encode(letter));
  }
  if (s == kNoState) return std::nullopt;
  return m.output(s);
}

std::string c1() {
  const Dfao& m = stewart_automaton();
  std::uint64_t cases = 0;
  for (std::size_t len = 0; len <= 6; ++len) {
    bool ok = true;
    std::string witness;
    for_each_sequence(len, [&](const PatternSeq& t) {
      if (!ok) return;
      const std::string w = toeplitz_prefix(t).str();
      for (std::uint64_t n = 0; n < w.size(); ++n) {
        ++cases;
        const int expected = w[n] == '?' ? 2 : w[n] - '0';
        if (traverse(m, t, n) != expected) {
          ok = false;
          witness = t.str() + " n=" + std::to_string(n);
          return;
        }
      }
    });
    if (!ok) throw std::runtime_error("mismatch at t=" + witness);
  }
  return std::to_string(cases) + " (t, n) pairs, |t| <= 6";
}

std::string run_one_check(const std::string& id, std::size_t len) {
  CheckOptions opt;
  opt.len = len;
  const CheckReport r = run_check(id, opt);
  if (!r.passed) throw std::runtime_error(r.text());
  return id + " len " + std::to_string(len) + ", " + std::to_string(r.cases) + " cases";
}

std::string c3() {
  CheckOptions opt;
  opt.len = 7;
  opt.exhaustive_up_to = 5;
  opt.samples = 500;
  const CheckReport r = run_check("cubes", opt);
  if (!r.passed) throw std::runtime_error(r.text());
  return "cubes len 7 (exhaustive to 5, 500 samples above), " + std::to_string(r.cases) +
         " cases";
}

std::string c8() {
  CheckOptions opt;
  opt.len = 4;
  opt.samples = 100000;
  const CheckReport r = run_check("common", opt);
  if (!r.passed) throw std::runtime_error(r.text());
  return "common len 4, " + std::to_string(r.cases) + " cases";
}

// Single nonzero base-3 digit: n = 3^i or 2*3^i.
Dfa single_nonzero_digit() {
  const Alphabet ab({3});
  // 0: only zeros so far, 1: one nonzero digit, 2: dead.
  std::vector<State> delta = {0, 1, 1, 1, 2, 2, 2, 2, 2};
  return Dfa(ab, delta, {0, 1, 0}, 0);
}

std::string c11(const std::string& root) {
  Session s = Session::with_builtins();
  s.limits.state_cap = kQueryStateCap;
  const auto statements = parse_script(read_file(root + "/queries/core.walnut"));
  std::ostringstream note;
  for (const Statement& st : statements) {
    const StatementResult r = run_statement(s, st);
    if (r.millis > kQueryBudgetMs) throw std::runtime_error(st.name + " over time budget");
    if (!r.as_expected()) throw std::runtime_error(r.summary());
    if (st.kind == Statement::Kind::Eval && !r.expected)
      throw std::runtime_error(st.name + " has no expected verdict");
  }
  const std::map<std::string, bool> verdicts = {
      {"hascube", false}, {"critexp", true}, {"arithprog", false}, {"xxyyxx", false}};
  for (const auto& [name, want] : verdicts) {
    const auto it = std::find_if(statements.begin(), statements.end(),
                                 [&](const Statement& st) { return st.name == name; });
    if (it == statements.end() || it->expected != want)
      throw std::runtime_error(name + " missing or with the wrong expectation");
  }

  const NamedAutomaton* pal = s.find_automaton("pal");
  if (!pal) throw std::runtime_error("pal not defined");
  std::vector<std::vector<std::uint64_t>> want_pal;
  for (std::uint64_t n = 0; n <= 7; ++n) want_pal.push_back({n});
  if (enumerate(pal->dfa, 8) != want_pal) throw std::runtime_error("pal != {0..7}");

  const NamedAutomaton* sq = s.find_automaton("squareorder");
  if (!sq) throw std::runtime_error("squareorder not defined");
  std::set<std::uint64_t> want_sq;
  for (std::uint64_t p = 1; p <= 6561; p *= 3) {
    want_sq.insert(p);
    want_sq.insert(2 * p);
  }
  std::set<std::uint64_t> got_sq;
  for (const auto& v : enumerate(sq->dfa, 9))
    if (v[0] <= 6561) got_sq.insert(v[0]);
  std::erase_if(want_sq, [](std::uint64_t v) { return v > 6561; });
  if (got_sq != want_sq) throw std::runtime_error("squareorder enumeration differs");
  if (!equivalent(sq->dfa, single_nonzero_digit()))
    throw std::runtime_error("squareorder not equivalent to 0*(1|2)0*");
  note << statements.size() << " statements as expected, pal = {0..7}, "
       << "squareorder = {3^i, 2*3^i}";
  return note.str();
}

std::string c12(const std::string& root) {
  const Dfao a = read_walnut_dfao(read_file(root + "/data/TP.txt"), Totality::kAllowPartial);
  const std::string written = write_walnut(a);
  const Dfao b = read_walnut_dfao(written, Totality::kAllowPartial);
  if (!equivalent(a, b)) throw std::runtime_error("round trip changed the automaton");
  if (!equivalent(a, stewart_automaton()))
    throw std::runtime_error("data/TP.txt differs from the built-in automaton");
  return std::to_string(a.num_states()) + " states survive write/read";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string root = argc > 1 ? argv[1] : STEWART_SOURCE_DIR;
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"C1", c1},
      {"C2", [] { return run_one_check("palindromes", 4); }},
      {"C3", c3},
      {"C4", [] { return run_one_check("critexp", 5); }},
      {"C5", [] { return run_one_check("squares", 5); }},
      {"C6", [] { return run_one_check("complexity", 4); }},
      {"C7", [] { return run_one_check("xxyyxx", 5) + "; " + run_one_check("ap", 5); }},
      {"C8", c8},
      {"C9", [] { return run_one_check("thm3", 3); }},
      {"C10", [] { return run_one_check("automatic", 3); }},
      {"C11", [&] { return c11(root); }},
      {"C12", [&] { return c12(root); }},
  };
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = true;
    try {
      note = fn();
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (!ok) ++failures;
    std::cout << id << " " << (ok ? "PASS" : "FAIL") << " (" << static_cast<long>(ms)
              << " ms) " << note << std::endl;
  }
  return failures ? 1 : 0;
}
