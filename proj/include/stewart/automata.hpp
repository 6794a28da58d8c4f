#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "stewart/errors.hpp"
#include "stewart/numeration.hpp"

namespace stewart {

using State = std::uint32_t;
inline constexpr State kNoState = std::numeric_limits<State>::max();

/// Digit tuples over tracks with individual bases, packed into one letter
/// index in mixed radix with track 0 as the least significant position.
/// The all-zero tuple is always letter 0. Zero tracks give one empty letter.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<int> bases);

  const std::vector<int>& bases() const { return bases_; }
  std::size_t num_tracks() const { return bases_.size(); }
  std::size_t size() const { return size_; }
  std::size_t stride(std::size_t track) const { return strides_[track]; }

  std::size_t encode(std::span<const int> digits) const;
  std::vector<int> decode(std::size_t letter) const;
  int digit(std::size_t letter, std::size_t track) const {
    return static_cast<int>(letter / strides_[track]) % bases_[track];
  }

  friend bool operator==(const Alphabet& x, const Alphabet& y) {
    return x.bases_ == y.bases_;
  }

 private:
  std::vector<int> bases_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

struct Limits {
  std::size_t state_cap = 1'000'000;
};

/// Total multi-track DFA read least significant digit first.
class Dfa {
 public:
  /// Throws std::invalid_argument unless every transition targets a state.
  Dfa(Alphabet alphabet, std::vector<State> delta, std::vector<char> accepting,
      State initial = 0);

  static Dfa universal(std::vector<int> bases);
  static Dfa empty(std::vector<int> bases);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<int>& bases() const { return alphabet_.bases(); }
  std::size_t num_tracks() const { return alphabet_.num_tracks(); }
  std::size_t num_states() const { return accepting_.size(); }
  State initial() const { return initial_; }
  State next(State s, std::size_t letter) const {
    return delta_[static_cast<std::size_t>(s) * alphabet_.size() + letter];
  }
  bool accepting(State s) const { return accepting_[s] != 0; }
  const std::vector<State>& table() const { return delta_; }

  /// Throws std::invalid_argument when the track bases differ.
  bool accepts(const TrackVector& input) const;
  bool accepts_values(std::span<const std::uint64_t> values) const;

 private:
  Alphabet alphabet_;
  std::vector<State> delta_;
  std::vector<char> accepting_;
  State initial_ = 0;
};

/// Multi-track DFA with output. Transitions may be kNoState, in which case the
/// output on any input passing through it is undefined.
class Dfao {
 public:
  Dfao(Alphabet alphabet, std::vector<State> delta, std::vector<int> outputs,
       State initial = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<int>& bases() const { return alphabet_.bases(); }
  std::size_t num_tracks() const { return alphabet_.num_tracks(); }
  std::size_t num_states() const { return outputs_.size(); }
  State initial() const { return initial_; }
  State next(State s, std::size_t letter) const {
    return delta_[static_cast<std::size_t>(s) * alphabet_.size() + letter];
  }
  int output(State s) const { return outputs_[s]; }
  const std::vector<int>& outputs() const { return outputs_; }
  bool is_total() const;

  /// Runs the input from the initial state; nullopt if a transition is
  /// undefined. Throws std::invalid_argument on a base mismatch.
  std::optional<int> eval(const TrackVector& input) const;
  std::optional<int> eval_values(std::span<const std::uint64_t> values) const;

 private:
  Alphabet alphabet_;
  std::vector<State> delta_;
  std::vector<int> outputs_;
  State initial_ = 0;
};

enum class BoolOp { And, Or, Implies, Iff, Xor };

/// Product of two automata over the same tracks; the result is minimized.
Dfa product(const Dfa& a, const Dfa& b, BoolOp op, const Limits& limits = {});

/// Product over a result track list `bases`. Track i of `a` reads result track
/// a_wiring[i] (likewise for `b`); several tracks may read the same result
/// track. The result is minimized.
Dfa combine(const Dfa& a, std::span<const std::size_t> a_wiring, const Dfa& b,
            std::span<const std::size_t> b_wiring,
            const std::vector<int>& bases, BoolOp op,
            const Limits& limits = {});

/// Re-expresses `a` over the result tracks `bases` using `wiring` as above.
Dfa rewire(const Dfa& a, std::span<const std::size_t> wiring,
           const std::vector<int>& bases, const Limits& limits = {});

Dfa complement(const Dfa& a);

/// Existential projection of one track: subset construction followed by the
/// zero-padding repair and minimization. Throws StateCapExceeded.
Dfa project(const Dfa& a, std::size_t track, const Limits& limits = {});

/// Removes unreachable states, merges equivalent ones (Hopcroft) and numbers
/// states breadth-first from the initial state.
Dfa minimize(const Dfa& a);

/// Marks as accepting every state that reaches acceptance through all-zero
/// letters, so appending padding never changes the verdict.
Dfa normalize_padding(const Dfa& a);
bool is_padding_stable(const Dfa& a);

bool equivalent(const Dfa& a, const Dfa& b);
bool is_empty(const Dfa& a);

/// Value tuples of all accepted inputs of length at most `max_len`,
/// deduplicated and sorted.
std::vector<std::vector<std::uint64_t>> enumerate(const Dfa& a,
                                                  std::size_t max_len);

/// Accepts exactly the inputs on which `m` is defined and outputs `value`.
Dfa output_language(const Dfao& m, int value);

Dfao minimize(const Dfao& m);
/// Same outputs, and same definedness, on every input.
bool equivalent(const Dfao& a, const Dfao& b);

}  // namespace stewart
