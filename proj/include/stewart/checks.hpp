#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stewart/automata.hpp"

namespace stewart {

struct CheckOptions {
  /// Largest sequence length examined; nullopt picks the check's default.
  std::optional<std::size_t> len;
  /// Lengths above this are sampled instead of enumerated.
  std::size_t exhaustive_up_to = 5;
  /// Sample size per sampled length (pairs for "common"); nullopt picks the
  /// check's default.
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  Limits limits;
};

struct CheckReport {
  std::string id;
  bool passed = true;
  std::uint64_t cases = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::vector<std::string> details;
  std::optional<std::string> witness;  // first counterexample

  std::string text() const;
  nlohmann::json json() const;
};

/// palindromes, cubes, critexp, squares, complexity, xxyyxx, common,
/// automatic, ap, thm3.
const std::vector<std::string>& check_ids();

/// Throws std::invalid_argument for an unknown id.
CheckReport run_check(std::string_view id, const CheckOptions& options = {});

}  // namespace stewart
