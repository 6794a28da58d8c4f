#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "stewart/automata.hpp"
#include "stewart/words.hpp"

namespace stewart {

/// The six-state automaton file for T(t)[n] (tracks lsd_7, lsd_3), verbatim.
extern const std::string_view kStewartAutomatonText;

/// Parsed once; transitions the file omits are undefined.
const Dfao& stewart_automaton();

/// T(t)[n] as computed by the automaton: 0, 1 or 2 for '?'; nullopt where
/// the automaton is undefined.
std::optional<int> stewart_symbol(const PatternSeq& t, std::uint64_t n);

}  // namespace stewart
