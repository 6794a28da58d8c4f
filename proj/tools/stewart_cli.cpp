// Command-line front end: word generation, query scripts, oracle checks and
// automaton export.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stewart/checks.hpp"
#include "stewart/errors.hpp"
#include "stewart/prover.hpp"
#include "stewart/script.hpp"
#include "stewart/stewart_automaton.hpp"
#include "stewart/walnut_format.hpp"
#include "stewart/words.hpp"

namespace {

using namespace stewart;

enum Exit { kOk = 0, kViolated = 1, kCap = 2, kUsage = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream os;
  os << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct GenerateArgs {
  std::string patterns;
  std::optional<std::size_t> length;
  std::optional<char> fill;
};

int cmd_generate(const GenerateArgs& a) {
  if (a.patterns.find('(') != std::string::npos) {
    const auto t = UltimatelyPeriodicSeq::parse(a.patterns);
    std::cout << stewart_prefix(t, a.length.value_or(81), a.fill) << '\n';
    return kOk;
  }
  const std::string w = toeplitz_prefix(PatternSeq::parse(a.patterns)).str();
  std::cout << (a.length ? w.substr(0, *a.length) : w) << '\n';
  return kOk;
}

struct EvalArgs {
  std::string file;
  std::string formula;
  bool timestamp = false;
  bool timings = false;
  bool strict = false;
  std::size_t state_cap = Limits{}.state_cap;
  std::string format = "text";
  std::optional<std::size_t> enumerate_len;
};

int cmd_eval(const EvalArgs& a) {
  Session session = Session::with_builtins();
  session.strict = a.strict;
  session.limits.state_cap = a.state_cap;

  std::vector<Statement> statements;
  if (!a.formula.empty()) {
    Statement st;
    st.kind = Statement::Kind::Eval;
    st.name = "formula";
    st.body = a.formula;
    statements.push_back(st);
  } else {
    statements = parse_script(read_file(a.file));
  }

  const bool json = a.format == "json";
  nlohmann::json report = nlohmann::json::array();
  if (a.timestamp && !json) std::cout << "# " << timestamp() << '\n';
  int status = kOk;
  for (const Statement& st : statements) {
    StatementResult r;
    Compiled free_form{Dfa::empty({}), {}};
    const bool open_formula = !a.formula.empty();
    if (open_formula) {
      // An inline formula may have free variables; report them instead of
      // failing.
      free_form = session.compile(st.body);
      r.kind = free_form.vars.empty() ? Statement::Kind::Eval : Statement::Kind::Def;
      r.name = st.name;
      if (free_form.vars.empty()) {
        r.verdict = free_form.dfa.accepting(free_form.dfa.initial());
      } else {
        r.states = free_form.dfa.num_states();
        r.vars = free_form.vars;
      }
    } else {
      r = run_statement(session, st);
    }
    if (!r.as_expected()) status = kViolated;

    std::vector<std::vector<std::uint64_t>> values;
    if (a.enumerate_len && !r.verdict) {
      const Dfa& d = open_formula ? free_form.dfa : session.find_automaton(r.name)->dfa;
      values = enumerate(d, *a.enumerate_len);
    }
    if (json) {
      nlohmann::json j;
      j["command"] = r.verdict ? "eval" : (r.kind == Statement::Kind::Reg ? "reg" : "def");
      j["name"] = r.name;
      if (r.verdict) j["result"] = *r.verdict;
      if (r.expected) j["expected"] = *r.expected;
      if (!r.verdict) {
        j["states"] = r.states;
        j["vars"] = r.vars;
      }
      if (a.enumerate_len && !r.verdict) j["accepted"] = values;
      if (a.timings) j["ms"] = r.millis;
      report.push_back(j);
    } else {
      std::cout << r.summary(a.timings) << '\n';
      if (a.enumerate_len && !r.verdict) {
        std::cout << "  accepted:";
        for (const auto& v : values) {
          std::cout << ' ';
          if (v.size() == 1) {
            std::cout << v[0];
          } else {
            std::cout << '(';
            for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << v[i];
            std::cout << ')';
          }
        }
        std::cout << '\n';
      }
      std::cout.flush();
    }
  }
  if (json) {
    nlohmann::json out;
    if (a.timestamp) out["timestamp"] = timestamp();
    out["results"] = report;
    std::cout << out.dump(2) << '\n';
  }
  return status;
}

struct CheckArgs {
  std::vector<std::string> ids;
  std::optional<std::size_t> len;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  std::size_t state_cap = Limits{}.state_cap;
  std::string format = "text";
};

int cmd_check(const CheckArgs& a) {
  std::vector<std::string> ids = a.ids;
  if (ids.size() == 1 && ids[0] == "all") ids = check_ids();
  CheckOptions options;
  options.len = a.len;
  options.samples = a.samples;
  options.seed = a.seed;
  options.limits.state_cap = a.state_cap;
  nlohmann::json reports = nlohmann::json::array();
  bool passed = true;
  for (const auto& id : ids) {
    const CheckReport r = run_check(id, options);
    passed = passed && r.passed;
    if (a.format == "json") {
      reports.push_back(r.json());
    } else {
      std::cout << r.text();
    }
  }
  if (a.format == "json") std::cout << reports.dump(2) << '\n';
  return passed ? kOk : kViolated;
}

struct ExportArgs {
  std::string name;
  std::string format = "walnut";
  std::string script;
  std::string output;
  bool strict = false;
  std::size_t state_cap = Limits{}.state_cap;
};

int cmd_export(const ExportArgs& a) {
  Session session = Session::with_builtins();
  session.strict = a.strict;
  session.limits.state_cap = a.state_cap;
  if (!a.script.empty()) run_script(session, parse_script(read_file(a.script)));
  std::string text;
  if (const Dfao* w = session.find_word(a.name)) {
    text = a.format == "dot" ? export_dot(*w) : write_walnut(*w);
  } else if (const NamedAutomaton* n = session.find_automaton(a.name)) {
    text = a.format == "dot" ? export_dot(n->dfa) : write_walnut(n->dfa);
  } else {
    throw std::invalid_argument("unknown automaton '" + a.name + "'");
  }
  if (a.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.output);
    if (!out) throw std::invalid_argument("cannot write " + a.output);
    out << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz and Stewart words: generation, automata and checks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  std::optional<std::size_t> gen_len_positional;
  std::string gen_fill;
  auto* generate = app.add_subcommand("generate", "Print T(t) or a prefix of a Stewart word");
  generate->add_option("patterns", gen.patterns, "Letters a-f, or pre(period) such as af(c)")
      ->required();
  generate->add_option("length", gen_len_positional, "Prefix length");
  generate->add_option("--len", gen.length, "Prefix length");
  generate->add_option("--fill", gen_fill, "Symbol for a hole that is never filled")
      ->check(CLI::IsMember({"0", "1"}));

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Run a query script or a single formula");
  eval->add_option("file", ev.file, "Script of eval/def/reg statements");
  eval->add_option("--formula", ev.formula, "Inline formula");
  eval->add_flag("--timestamp", ev.timestamp, "Print a timestamp header");
  eval->add_flag("--timings", ev.timings, "Print wall-clock time per statement");
  eval->add_flag("--strict", ev.strict, "Reject the $link7 alias");
  eval->add_option("--state-cap", ev.state_cap, "Largest automaton allowed");
  eval->add_option("--format", ev.format)->check(CLI::IsMember({"text", "json"}));
  eval->add_option("--enumerate", ev.enumerate_len,
                   "List accepted tuples of defined automata up to this many digits");

  CheckArgs ck;
  auto* check = app.add_subcommand("check", "Run brute-force checks");
  std::vector<std::string> ids = check_ids();
  ids.push_back("all");
  check->add_option("ids", ck.ids, "Check names or 'all'")->required()->check(CLI::IsMember(ids));
  check->add_option("--len", ck.len, "Largest sequence length");
  check->add_option("--samples", ck.samples, "Sample size for sampled lengths");
  check->add_option("--seed", ck.seed, "Seed for sampled lengths");
  check->add_option("--state-cap", ck.state_cap, "Largest automaton allowed");
  check->add_option("--format", ck.format)->check(CLI::IsMember({"text", "json"}));

  ExportArgs ex;
  auto* exp = app.add_subcommand("export", "Write a session automaton");
  exp->add_option("name", ex.name, "TP, a builtin, or a name defined by --script")->required();
  exp->add_option("--format", ex.format)->check(CLI::IsMember({"walnut", "dot"}));
  exp->add_option("--script", ex.script, "Script run before exporting");
  exp->add_option("--output,-o", ex.output, "Output file");
  exp->add_flag("--strict", ex.strict, "Reject the $link7 alias");
  exp->add_option("--state-cap", ex.state_cap, "Largest automaton allowed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) {
      if (!gen.length) gen.length = gen_len_positional;
      if (!gen_fill.empty()) gen.fill = gen_fill[0];
      return cmd_generate(gen);
    }
    if (*eval) {
      if (ev.file.empty() == ev.formula.empty()) {
        std::cerr << "error: give either a script file or --formula\n";
        return kUsage;
      }
      return cmd_eval(ev);
    }
    if (*check) return cmd_check(ck);
    if (*exp) return cmd_export(ex);
  } catch (const StateCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const UnresolvedHole& e) {
    std::cerr << "error: " << e.what() << " (use --fill)\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
