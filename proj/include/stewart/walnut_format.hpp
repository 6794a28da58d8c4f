#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "stewart/automata.hpp"

namespace stewart {

/// Whether omitted transitions are an error or mean "undefined".
enum class Totality { kRequire, kAllowPartial };

/// Reads the plain-text automaton layout: a header of numeration tags
/// ("lsd_7 lsd_3"), then one block per state headed by "state output" and
/// followed by "d1 d2 ... -> target" lines. The first block is the initial
/// state. Throws ParseError with a line number.
Dfao read_walnut_dfao(std::string_view text,
                      Totality totality = Totality::kRequire);

/// Same layout with an accepting flag (0/1) instead of an output. With
/// kAllowPartial, omitted transitions go to a fresh rejecting sink.
Dfa read_walnut_dfa(std::string_view text,
                    Totality totality = Totality::kRequire);

/// Defined transitions only, tuples in lexicographic order.
std::string write_walnut(const Dfao& m);
std::string write_walnut(const Dfa& a);

/// Graphviz text. States are labeled "name/output" for DFAOs; DFA states that
/// cannot reach acceptance are omitted. Edges whose letters cover the whole
/// alphabet are labeled "*".
std::string export_dot(const Dfao& m);
std::string export_dot(const Dfa& a);

/// Structured manifest used for test fixtures.
nlohmann::json to_manifest(const Dfa& a);
Dfa dfa_from_manifest(const nlohmann::json& j);

}  // namespace stewart
