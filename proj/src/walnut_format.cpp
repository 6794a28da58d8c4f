#include "stewart/walnut_format.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace stewart {

namespace {

struct RawBlock {
  long name = 0;
  int label = 0;
  std::size_t line = 0;
  // letter -> (target name, line)
  std::map<std::size_t, std::pair<long, std::size_t>> edges;
};

struct RawAutomaton {
  Alphabet alphabet;
  std::vector<RawBlock> blocks;
};

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long parse_int(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got \"" + tok + "\"", line, 0);
  }
  if (used != tok.size()) {
    throw ParseError("expected an integer, got \"" + tok + "\"", line, 0);
  }
  return v;
}

int parse_tag(const std::string& tok, std::size_t line) {
  if (tok.rfind("lsd_", 0) == 0) {
    const long b = parse_int(tok.substr(4), line);
    if (b < 2) throw ParseError("base must be at least 2 in \"" + tok + "\"", line, 0);
    return static_cast<int>(b);
  }
  if (tok.rfind("msd_", 0) == 0) {
    throw ParseError("msd-first numeration is not supported", line, 0);
  }
  throw ParseError("unknown numeration tag \"" + tok + "\"", line, 0);
}

RawAutomaton parse_raw(std::string_view text) {
  RawAutomaton raw;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (!have_header) {
      std::vector<int> bases;
      for (const auto& t : toks) bases.push_back(parse_tag(t, lineno));
      raw.alphabet = Alphabet(std::move(bases));
      have_header = true;
      continue;
    }
    const auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) {
      if (toks.size() != 2) {
        throw ParseError("state header must be \"state output\"", lineno, 0);
      }
      RawBlock block;
      block.name = parse_int(toks[0], lineno);
      block.label = static_cast<int>(parse_int(toks[1], lineno));
      block.line = lineno;
      for (const auto& b : raw.blocks) {
        if (b.name == block.name) {
          throw ParseError("state " + toks[0] + " declared twice", lineno, 0);
        }
      }
      raw.blocks.push_back(std::move(block));
      continue;
    }
    if (raw.blocks.empty()) {
      throw ParseError("transition before any state header", lineno, 0);
    }
    const auto ndigits = static_cast<std::size_t>(arrow - toks.begin());
    if (ndigits != raw.alphabet.num_tracks()) {
      throw ParseError("transition has " + std::to_string(ndigits) +
                           " digits but the header declares " +
                           std::to_string(raw.alphabet.num_tracks()) + " tracks",
                       lineno, 0);
    }
    if (toks.end() - arrow != 2) {
      throw ParseError("transition must have exactly one target", lineno, 0);
    }
    std::vector<int> digits;
    for (std::size_t i = 0; i < ndigits; ++i) {
      const long d = parse_int(toks[i], lineno);
      if (d < 0 || d >= raw.alphabet.bases()[i]) {
        throw ParseError("digit " + toks[i] + " out of range for lsd_" +
                             std::to_string(raw.alphabet.bases()[i]),
                         lineno, 0);
      }
      digits.push_back(static_cast<int>(d));
    }
    const long target = parse_int(*(arrow + 1), lineno);
    auto& edges = raw.blocks.back().edges;
    if (!edges.emplace(raw.alphabet.encode(digits), std::make_pair(target, lineno))
             .second) {
      throw ParseError("duplicate transition", lineno, 0);
    }
  }
  if (!have_header) throw ParseError("missing numeration header", 0, 0);
  if (raw.blocks.empty()) throw ParseError("no states", 0, 0);
  return raw;
}

/// Dense transition table; kNoState where the file omits a transition.
std::vector<State> resolve(const RawAutomaton& raw, Totality totality) {
  std::map<long, State> ids;
  for (std::size_t i = 0; i < raw.blocks.size(); ++i) {
    ids[raw.blocks[i].name] = static_cast<State>(i);
  }
  const std::size_t k = raw.alphabet.size();
  std::vector<State> delta(raw.blocks.size() * k, kNoState);
  for (std::size_t s = 0; s < raw.blocks.size(); ++s) {
    const auto& block = raw.blocks[s];
    for (const auto& [letter, edge] : block.edges) {
      auto it = ids.find(edge.first);
      if (it == ids.end()) {
        throw ParseError("transition to undeclared state " +
                             std::to_string(edge.first),
                         edge.second, 0);
      }
      delta[s * k + letter] = it->second;
    }
    if (totality == Totality::kRequire && block.edges.size() != k) {
      throw ParseError("state " + std::to_string(block.name) + " defines " +
                           std::to_string(block.edges.size()) + " of " +
                           std::to_string(k) + " transitions",
                       block.line, 0);
    }
  }
  return delta;
}

/// Letters in lexicographic tuple order (track 0 varies slowest).
std::vector<std::size_t> lexicographic_letters(const Alphabet& alphabet) {
  const std::size_t tracks = alphabet.num_tracks();
  std::vector<std::size_t> out;
  out.reserve(alphabet.size());
  std::vector<int> digits(tracks, 0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    out.push_back(alphabet.encode(digits));
    for (std::size_t t = tracks; t-- > 0;) {
      if (++digits[t] < alphabet.bases()[t]) break;
      digits[t] = 0;
    }
  }
  return out;
}

std::string header(const Alphabet& alphabet) {
  std::string h;
  for (std::size_t i = 0; i < alphabet.num_tracks(); ++i) {
    if (i) h += ' ';
    h += "lsd_" + std::to_string(alphabet.bases()[i]);
  }
  return h;
}

std::string tuple_text(const Alphabet& alphabet, std::size_t letter,
                       const char* sep) {
  std::string s;
  const auto digits = alphabet.decode(letter);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(digits[i]);
  }
  return s;
}

template <typename Next, typename Label>
std::string write_blocks(const Alphabet& alphabet, std::size_t n, Next next,
                         Label label) {
  std::ostringstream os;
  os << header(alphabet) << '\n';
  const auto letters = lexicographic_letters(alphabet);
  for (std::size_t s = 0; s < n; ++s) {
    if (s) os << '\n';
    os << s << ' ' << label(static_cast<State>(s)) << '\n';
    for (std::size_t c : letters) {
      const State t = next(static_cast<State>(s), c);
      if (t == kNoState) continue;
      const std::string tuple = tuple_text(alphabet, c, " ");
      os << tuple << (tuple.empty() ? "" : " ") << "-> " << t << '\n';
    }
  }
  return os.str();
}

template <typename Next, typename Keep, typename Node>
std::string write_dot(const Alphabet& alphabet, std::size_t n, Next next,
                      Keep keep, Node node) {
  std::ostringstream os;
  os << "digraph G {\n  rankdir = LR;\n  node [shape = circle];\n";
  for (std::size_t s = 0; s < n; ++s) {
    if (keep(static_cast<State>(s))) os << "  " << node(static_cast<State>(s)) << ";\n";
  }
  const auto letters = lexicographic_letters(alphabet);
  for (std::size_t s = 0; s < n; ++s) {
    if (!keep(static_cast<State>(s))) continue;
    std::map<State, std::vector<std::size_t>> grouped;
    for (std::size_t c : letters) {
      const State t = next(static_cast<State>(s), c);
      if (t != kNoState && keep(t)) grouped[t].push_back(c);
    }
    for (const auto& [t, cs] : grouped) {
      std::string label;
      if (cs.size() == alphabet.size()) {
        label = "*";
      } else {
        for (std::size_t i = 0; i < cs.size(); ++i) {
          if (i) label += ", ";
          label += "[" + tuple_text(alphabet, cs[i], ",") + "]";
        }
      }
      os << "  " << s << " -> " << t << " [label = \"" << label << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace

Dfao read_walnut_dfao(std::string_view text, Totality totality) {
  auto raw = parse_raw(text);
  auto delta = resolve(raw, totality);
  std::vector<int> outputs;
  for (const auto& b : raw.blocks) outputs.push_back(b.label);
  return Dfao(raw.alphabet, std::move(delta), std::move(outputs));
}

Dfa read_walnut_dfa(std::string_view text, Totality totality) {
  auto raw = parse_raw(text);
  auto delta = resolve(raw, totality);
  std::vector<char> accepting;
  for (const auto& b : raw.blocks) {
    if (b.label != 0 && b.label != 1) {
      throw ParseError("accepting flag must be 0 or 1", b.line, 0);
    }
    accepting.push_back(static_cast<char>(b.label));
  }
  if (std::find(delta.begin(), delta.end(), kNoState) != delta.end()) {
    const auto sink = static_cast<State>(accepting.size());
    accepting.push_back(0);
    delta.resize(delta.size() + raw.alphabet.size(), kNoState);
    for (auto& t : delta) {
      if (t == kNoState) t = sink;
    }
  }
  return Dfa(raw.alphabet, std::move(delta), std::move(accepting));
}

std::string write_walnut(const Dfao& m) {
  return write_blocks(
      m.alphabet(), m.num_states(),
      [&](State s, std::size_t c) { return m.next(s, c); },
      [&](State s) { return m.output(s); });
}

std::string write_walnut(const Dfa& a) {
  return write_blocks(
      a.alphabet(), a.num_states(),
      [&](State s, std::size_t c) { return a.next(s, c); },
      [&](State s) { return a.accepting(s) ? 1 : 0; });
}

std::string export_dot(const Dfao& m) {
  return write_dot(
      m.alphabet(), m.num_states(),
      [&](State s, std::size_t c) { return m.next(s, c); },
      [](State) { return true; },
      [&](State s) {
        return std::to_string(s) + " [label = \"" + std::to_string(s) + "/" +
               std::to_string(m.output(s)) + "\"]";
      });
}

std::string export_dot(const Dfa& a) {
  // Keep states that can still reach acceptance.
  std::vector<char> live(a.num_states(), 0);
  for (std::size_t s = 0; s < a.num_states(); ++s) live[s] = a.accepting(static_cast<State>(s));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      if (live[s]) continue;
      for (std::size_t c = 0; c < a.alphabet().size(); ++c) {
        if (live[a.next(static_cast<State>(s), c)]) {
          live[s] = 1;
          changed = true;
          break;
        }
      }
    }
  }
  return write_dot(
      a.alphabet(), a.num_states(),
      [&](State s, std::size_t c) { return a.next(s, c); },
      [&](State s) { return live[s] != 0; },
      [&](State s) {
        return std::to_string(s) + " [shape = " +
               (a.accepting(s) ? "doublecircle" : "circle") + "]";
      });
}

nlohmann::json to_manifest(const Dfa& a) {
  nlohmann::json j;
  j["bases"] = a.bases();
  j["initial"] = a.initial();
  std::vector<int> accepting;
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    accepting.push_back(a.accepting(static_cast<State>(s)) ? 1 : 0);
  }
  j["accepting"] = accepting;
  j["delta"] = a.table();
  return j;
}

Dfa dfa_from_manifest(const nlohmann::json& j) {
  std::vector<char> accepting;
  for (int flag : j.at("accepting").get<std::vector<int>>()) {
    accepting.push_back(static_cast<char>(flag != 0));
  }
  return Dfa(Alphabet(j.at("bases").get<std::vector<int>>()),
             j.at("delta").get<std::vector<State>>(), std::move(accepting),
             j.at("initial").get<State>());
}

}  // namespace stewart
