#include "stewart/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace stewart {

namespace {

struct SubsetHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (State s : v) {
      h ^= s;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

void check_cap(std::size_t states, const Limits& limits) {
  if (states > limits.state_cap) throw StateCapExceeded(limits.state_cap);
}

bool apply(BoolOp op, bool x, bool y) {
  switch (op) {
    case BoolOp::And: return x && y;
    case BoolOp::Or: return x || y;
    case BoolOp::Implies: return !x || y;
    case BoolOp::Iff: return x == y;
    case BoolOp::Xor: return x != y;
  }
  return false;
}

/// For each letter of `result`, the letter of `source` read through `wiring`.
std::vector<std::size_t> wiring_table(const Alphabet& result,
                                      const Alphabet& source,
                                      std::span<const std::size_t> wiring) {
  if (wiring.size() != source.num_tracks()) {
    throw std::invalid_argument("wiring does not cover every source track");
  }
  for (std::size_t i = 0; i < wiring.size(); ++i) {
    if (wiring[i] >= result.num_tracks()) {
      throw std::invalid_argument("wiring refers to a missing result track");
    }
    if (result.bases()[wiring[i]] != source.bases()[i]) {
      throw std::invalid_argument(
          "wired tracks have different bases: " +
          std::to_string(result.bases()[wiring[i]]) + " vs " +
          std::to_string(source.bases()[i]));
    }
  }
  std::vector<std::size_t> table(result.size());
  std::vector<int> digits(result.num_tracks(), 0);
  for (std::size_t letter = 0; letter < result.size(); ++letter) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < wiring.size(); ++i) {
      src += static_cast<std::size_t>(digits[wiring[i]]) * source.stride(i);
    }
    table[letter] = src;
    for (std::size_t t = 0; t < digits.size(); ++t) {
      if (++digits[t] < result.bases()[t]) break;
      digits[t] = 0;
    }
  }
  return table;
}

/// Partition refinement (Hopcroft). `delta` is total over n states; states
/// with different labels are never merged. Returns a block id per state.
std::vector<State> refine(std::size_t n, std::size_t k,
                          const std::vector<State>& delta,
                          const std::vector<int>& labels) {
  std::vector<State> block_of(n, 0);
  if (n == 0) return block_of;

  // Predecessor lists, indexed by letter * n + target.
  std::vector<std::size_t> offsets(k * n + 1, 0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c = 0; c < k; ++c) ++offsets[c * n + delta[p * k + c] + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<State> preds(k * n);
  {
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t c = 0; c < k; ++c) {
        preds[fill[c * n + delta[p * k + c]]++] = static_cast<State>(p);
      }
    }
  }

  std::vector<State> elems(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = static_cast<State>(i);
  std::stable_sort(elems.begin(), elems.end(),
                   [&](State x, State y) { return labels[x] < labels[y]; });
  std::vector<std::size_t> pos(n);
  std::vector<std::size_t> begin;
  std::vector<std::size_t> end;
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || labels[elems[i]] != labels[elems[i - 1]]) {
      if (i) end.push_back(i);
      begin.push_back(i);
      marked.push_back(0);
    }
    pos[elems[i]] = i;
    block_of[elems[i]] = static_cast<State>(begin.size() - 1);
  }
  end.push_back(n);

  std::vector<char> in_work;
  std::vector<std::pair<State, std::size_t>> work;
  auto push = [&](State b, std::size_t c) {
    const std::size_t idx = static_cast<std::size_t>(b) * k + c;
    if (in_work.size() <= idx) in_work.resize((b + 1) * k, 0);
    if (!in_work[idx]) {
      in_work[idx] = 1;
      work.emplace_back(b, c);
    }
  };
  {
    std::size_t largest = 0;
    for (std::size_t b = 1; b < begin.size(); ++b) {
      if (end[b] - begin[b] > end[largest] - begin[largest]) largest = b;
    }
    for (std::size_t b = 0; b < begin.size(); ++b) {
      if (b == largest) continue;
      for (std::size_t c = 0; c < k; ++c) push(static_cast<State>(b), c);
    }
  }

  std::vector<State> splitter;
  std::vector<State> touched;
  while (!work.empty()) {
    const auto [b, c] = work.back();
    work.pop_back();
    in_work[static_cast<std::size_t>(b) * k + c] = 0;

    splitter.assign(elems.begin() + static_cast<std::ptrdiff_t>(begin[b]),
                    elems.begin() + static_cast<std::ptrdiff_t>(end[b]));
    touched.clear();
    for (State s : splitter) {
      const std::size_t base = c * n + s;
      for (std::size_t i = offsets[base]; i < offsets[base + 1]; ++i) {
        const State p = preds[i];
        const State y = block_of[p];
        const std::size_t boundary = begin[y] + marked[y];
        if (pos[p] >= boundary) {
          const State other = elems[boundary];
          std::swap(elems[pos[p]], elems[boundary]);
          pos[other] = pos[p];
          pos[p] = boundary;
          if (marked[y]++ == 0) touched.push_back(y);
        }
      }
    }
    for (State y : touched) {
      const std::size_t m = marked[y];
      marked[y] = 0;
      if (m == end[y] - begin[y]) continue;
      const auto z = static_cast<State>(begin.size());
      begin.push_back(begin[y]);
      end.push_back(begin[y] + m);
      marked.push_back(0);
      begin[y] += m;
      for (std::size_t i = begin[z]; i < end[z]; ++i) block_of[elems[i]] = z;
      const bool z_smaller = (end[z] - begin[z]) <= (end[y] - begin[y]);
      for (std::size_t cc = 0; cc < k; ++cc) {
        const std::size_t yidx = static_cast<std::size_t>(y) * k + cc;
        if (yidx < in_work.size() && in_work[yidx]) {
          push(z, cc);
        } else {
          push(z_smaller ? z : y, cc);
        }
      }
    }
  }
  return block_of;
}

/// States reachable from `initial`, in breadth-first order. Entries of
/// `delta` equal to kNoState are skipped.
std::vector<State> bfs_order(std::size_t n, std::size_t k,
                             const std::vector<State>& delta, State initial) {
  std::vector<State> order;
  std::vector<char> seen(n, 0);
  order.push_back(initial);
  seen[initial] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const State s = order[head];
    for (std::size_t c = 0; c < k; ++c) {
      const State t = delta[static_cast<std::size_t>(s) * k + c];
      if (t != kNoState && !seen[t]) {
        seen[t] = 1;
        order.push_back(t);
      }
    }
  }
  return order;
}

struct Quotient {
  std::vector<State> delta;
  std::vector<State> rep;  // representative original state per new state
};

/// Builds the quotient by `block_of` restricted to `states`, renumbered
/// breadth-first from the block of `initial`. `skip_block` (if not kNoState)
/// is dropped and transitions into it become kNoState.
Quotient quotient(std::size_t k, const std::vector<State>& delta,
                  const std::vector<State>& states,
                  const std::vector<State>& block_of, State initial,
                  State skip_block) {
  State num_blocks = 0;
  for (State s : states) num_blocks = std::max(num_blocks, block_of[s] + 1);
  std::vector<State> rep_of_block(num_blocks, kNoState);
  for (State s : states) {
    if (rep_of_block[block_of[s]] == kNoState) rep_of_block[block_of[s]] = s;
  }
  std::vector<State> new_id(num_blocks, kNoState);
  Quotient q;
  new_id[block_of[initial]] = 0;
  q.rep.push_back(rep_of_block[block_of[initial]]);
  for (std::size_t head = 0; head < q.rep.size(); ++head) {
    const State r = q.rep[head];
    for (std::size_t c = 0; c < k; ++c) {
      const State t = delta[static_cast<std::size_t>(r) * k + c];
      if (t == kNoState) continue;
      const State b = block_of[t];
      if (b == skip_block) continue;
      if (new_id[b] == kNoState) {
        new_id[b] = static_cast<State>(q.rep.size());
        q.rep.push_back(rep_of_block[b]);
      }
    }
  }
  q.delta.assign(q.rep.size() * k, kNoState);
  for (std::size_t i = 0; i < q.rep.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      const State t = delta[static_cast<std::size_t>(q.rep[i]) * k + c];
      if (t == kNoState) continue;
      const State b = block_of[t];
      if (b == skip_block) continue;
      q.delta[i * k + c] = new_id[b];
    }
  }
  return q;
}

/// Pair-state product exploration shared by product/combine/rewire.
Dfa explore_product(const Dfa& a, const std::vector<std::size_t>& a_map,
                    const Dfa* b, const std::vector<std::size_t>& b_map,
                    Alphabet alphabet, BoolOp op, const Limits& limits) {
  const std::size_t k = alphabet.size();
  const std::size_t nb = b ? b->num_states() : 1;
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State x, State y) {
    const std::uint64_t key = static_cast<std::uint64_t>(x) * nb + y;
    auto [it, inserted] = ids.emplace(key, static_cast<State>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(x, y);
      check_cap(pairs.size(), limits);
    }
    return it->second;
  };
  intern(a.initial(), b ? b->initial() : 0);
  std::vector<State> delta;
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    const auto [x, y] = pairs[head];
    delta.resize((head + 1) * k);
    for (std::size_t c = 0; c < k; ++c) {
      const State nx = a.next(x, a_map[c]);
      const State ny = b ? b->next(y, b_map[c]) : 0;
      delta[head * k + c] = intern(nx, ny);
    }
  }
  std::vector<char> accepting(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const bool x = a.accepting(pairs[i].first);
    accepting[i] = b ? apply(op, x, b->accepting(pairs[i].second)) : x;
  }
  return Dfa(std::move(alphabet), std::move(delta), std::move(accepting));
}

std::vector<std::size_t> identity_map(std::size_t k) {
  std::vector<std::size_t> m(k);
  for (std::size_t i = 0; i < k; ++i) m[i] = i;
  return m;
}

/// States from which some accepting state is reachable.
std::vector<char> coreachable(const Dfa& a) {
  const std::size_t n = a.num_states();
  const std::size_t k = a.alphabet().size();
  std::vector<std::vector<State>> rev(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t c = 0; c < k; ++c) {
      rev[a.next(static_cast<State>(s), c)].push_back(static_cast<State>(s));
    }
  }
  std::vector<char> live(n, 0);
  std::vector<State> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (a.accepting(static_cast<State>(s))) {
      live[s] = 1;
      stack.push_back(static_cast<State>(s));
    }
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (State p : rev[s]) {
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return live;
}

}  // namespace

// ---------------------------------------------------------------------------

Alphabet::Alphabet(std::vector<int> bases) : bases_(std::move(bases)) {
  strides_.reserve(bases_.size());
  size_ = 1;
  for (int b : bases_) {
    if (b < 2) throw std::invalid_argument("track base must be at least 2");
    strides_.push_back(size_);
    size_ *= static_cast<std::size_t>(b);
  }
}

std::size_t Alphabet::encode(std::span<const int> digits) const {
  if (digits.size() != bases_.size()) {
    throw std::invalid_argument("digit tuple has wrong number of tracks");
  }
  std::size_t letter = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= bases_[i]) {
      throw std::invalid_argument("digit " + std::to_string(digits[i]) +
                                  " out of range for base " +
                                  std::to_string(bases_[i]));
    }
    letter += static_cast<std::size_t>(digits[i]) * strides_[i];
  }
  return letter;
}

std::vector<int> Alphabet::decode(std::size_t letter) const {
  std::vector<int> out(bases_.size());
  for (std::size_t i = 0; i < bases_.size(); ++i) out[i] = digit(letter, i);
  return out;
}

// ---------------------------------------------------------------------------

Dfa::Dfa(Alphabet alphabet, std::vector<State> delta,
         std::vector<char> accepting, State initial)
    : alphabet_(std::move(alphabet)),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)),
      initial_(initial) {
  const std::size_t n = accepting_.size();
  if (n == 0) throw std::invalid_argument("automaton needs at least one state");
  if (delta_.size() != n * alphabet_.size()) {
    throw std::invalid_argument("transition table has the wrong size");
  }
  if (initial_ >= n) throw std::invalid_argument("initial state out of range");
  for (State t : delta_) {
    if (t >= n) throw std::invalid_argument("transition table is not total");
  }
}

Dfa Dfa::universal(std::vector<int> bases) {
  Alphabet alphabet(std::move(bases));
  const std::size_t k = alphabet.size();
  return Dfa(std::move(alphabet), std::vector<State>(k, 0), {1});
}

Dfa Dfa::empty(std::vector<int> bases) {
  Alphabet alphabet(std::move(bases));
  const std::size_t k = alphabet.size();
  return Dfa(std::move(alphabet), std::vector<State>(k, 0), {0});
}

namespace {

template <typename Step>
State run(const Alphabet& alphabet, const TrackVector& input, State initial,
          Step step) {
  if (input.num_tracks() != alphabet.num_tracks() ||
      input.bases() != alphabet.bases()) {
    throw std::invalid_argument("input track bases do not match automaton");
  }
  State s = initial;
  for (std::size_t i = 0; i < input.length() && s != kNoState; ++i) {
    s = step(s, alphabet.encode(input.column(i)));
  }
  return s;
}

}  // namespace

bool Dfa::accepts(const TrackVector& input) const {
  return accepting(run(alphabet_, input, initial_,
                       [this](State s, std::size_t c) { return next(s, c); }));
}

bool Dfa::accepts_values(std::span<const std::uint64_t> values) const {
  return accepts(align_values(values, bases()));
}

Dfao::Dfao(Alphabet alphabet, std::vector<State> delta, std::vector<int> outputs,
           State initial)
    : alphabet_(std::move(alphabet)),
      delta_(std::move(delta)),
      outputs_(std::move(outputs)),
      initial_(initial) {
  const std::size_t n = outputs_.size();
  if (n == 0) throw std::invalid_argument("automaton needs at least one state");
  if (delta_.size() != n * alphabet_.size()) {
    throw std::invalid_argument("transition table has the wrong size");
  }
  if (initial_ >= n) throw std::invalid_argument("initial state out of range");
  for (State t : delta_) {
    if (t != kNoState && t >= n) {
      throw std::invalid_argument("transition to an unknown state");
    }
  }
}

bool Dfao::is_total() const {
  return std::find(delta_.begin(), delta_.end(), kNoState) == delta_.end();
}

std::optional<int> Dfao::eval(const TrackVector& input) const {
  const State s = run(alphabet_, input, initial_,
                      [this](State q, std::size_t c) { return next(q, c); });
  if (s == kNoState) return std::nullopt;
  return outputs_[s];
}

std::optional<int> Dfao::eval_values(
    std::span<const std::uint64_t> values) const {
  return eval(align_values(values, bases()));
}

// ---------------------------------------------------------------------------

Dfa product(const Dfa& a, const Dfa& b, BoolOp op, const Limits& limits) {
  if (a.bases() != b.bases()) {
    throw std::invalid_argument("product of automata with different tracks");
  }
  const auto id = identity_map(a.alphabet().size());
  return minimize(explore_product(a, id, &b, id, a.alphabet(), op, limits));
}

Dfa combine(const Dfa& a, std::span<const std::size_t> a_wiring, const Dfa& b,
            std::span<const std::size_t> b_wiring,
            const std::vector<int>& bases, BoolOp op, const Limits& limits) {
  Alphabet alphabet(bases);
  const auto a_map = wiring_table(alphabet, a.alphabet(), a_wiring);
  const auto b_map = wiring_table(alphabet, b.alphabet(), b_wiring);
  return minimize(
      explore_product(a, a_map, &b, b_map, std::move(alphabet), op, limits));
}

Dfa rewire(const Dfa& a, std::span<const std::size_t> wiring,
           const std::vector<int>& bases, const Limits& limits) {
  Alphabet alphabet(bases);
  const auto a_map = wiring_table(alphabet, a.alphabet(), wiring);
  return minimize(explore_product(a, a_map, nullptr, {}, std::move(alphabet),
                                  BoolOp::And, limits));
}

Dfa complement(const Dfa& a) {
  std::vector<char> accepting(a.num_states());
  for (std::size_t s = 0; s < accepting.size(); ++s) {
    accepting[s] = !a.accepting(static_cast<State>(s));
  }
  return Dfa(a.alphabet(), a.table(), std::move(accepting), a.initial());
}

Dfa project(const Dfa& a, std::size_t track, const Limits& limits) {
  if (a.num_tracks() < 2) {
    throw std::invalid_argument("projection needs at least two tracks");
  }
  if (track >= a.num_tracks()) {
    throw std::invalid_argument("projected track does not exist");
  }
  const Alphabet& src = a.alphabet();
  std::vector<int> bases = src.bases();
  const int removed_base = bases[track];
  bases.erase(bases.begin() + static_cast<std::ptrdiff_t>(track));
  Alphabet alphabet(bases);
  const std::size_t k = alphabet.size();
  const std::size_t stride = src.stride(track);
  const auto rb = static_cast<std::size_t>(removed_base);

  auto source_letter = [&](std::size_t letter, std::size_t d) {
    const std::size_t low = letter % stride;
    const std::size_t high = letter / stride;
    return low + d * stride + high * stride * rb;
  };

  // Padding repair: a state counts as accepting if acceptance is reachable
  // through letters that are zero on every kept track.
  const std::size_t n = a.num_states();
  std::vector<char> marked(n, 0);
  {
    std::vector<std::vector<State>> rev(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t d = 0; d < rb; ++d) {
        rev[a.next(static_cast<State>(s), d * stride)].push_back(
            static_cast<State>(s));
      }
    }
    std::vector<State> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (a.accepting(static_cast<State>(s))) {
        marked[s] = 1;
        stack.push_back(static_cast<State>(s));
      }
    }
    while (!stack.empty()) {
      const State s = stack.back();
      stack.pop_back();
      for (State p : rev[s]) {
        if (!marked[p]) {
          marked[p] = 1;
          stack.push_back(p);
        }
      }
    }
  }

  std::vector<std::size_t> table(k * rb);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < rb; ++d) table[c * rb + d] = source_letter(c, d);
  }

  std::unordered_map<std::vector<State>, State, SubsetHash> ids;
  std::vector<const std::vector<State>*> subsets;
  std::vector<State> delta;
  std::vector<char> accepting;
  auto intern = [&](std::vector<State>&& set) {
    auto [it, inserted] = ids.emplace(std::move(set), 0);
    if (inserted) {
      it->second = static_cast<State>(subsets.size());
      subsets.push_back(&it->first);
      check_cap(subsets.size(), limits);
    }
    return it->second;
  };
  intern(std::vector<State>{a.initial()});

  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  std::vector<State> scratch;
  for (std::size_t head = 0; head < subsets.size(); ++head) {
    const std::vector<State> current = *subsets[head];
    bool acc = false;
    for (State s : current) acc = acc || marked[s];
    accepting.push_back(acc);
    delta.resize((head + 1) * k);
    for (std::size_t c = 0; c < k; ++c) {
      ++epoch;
      scratch.clear();
      const std::size_t* row = &table[c * rb];
      for (State s : current) {
        for (std::size_t d = 0; d < rb; ++d) {
          const State t = a.next(s, row[d]);
          if (stamp[t] != epoch) {
            stamp[t] = epoch;
            scratch.push_back(t);
          }
        }
      }
      std::sort(scratch.begin(), scratch.end());
      delta[head * k + c] = intern(std::vector<State>(scratch));
    }
  }
  return minimize(Dfa(std::move(alphabet), std::move(delta),
                      std::move(accepting)));
}

Dfa minimize(const Dfa& a) {
  const std::size_t k = a.alphabet().size();
  const auto order = bfs_order(a.num_states(), k, a.table(), a.initial());
  // Compact to the reachable part before refining.
  std::vector<State> index(a.num_states(), kNoState);
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<State>(i);
  const std::size_t n = order.size();
  std::vector<State> delta(n * k);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) delta[i * k + c] = index[a.next(order[i], c)];
    labels[i] = a.accepting(order[i]) ? 1 : 0;
  }
  std::vector<State> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i] = static_cast<State>(i);
  const auto blocks = refine(n, k, delta, labels);
  auto q = quotient(k, delta, states, blocks, 0, kNoState);
  std::vector<char> accepting(q.rep.size());
  for (std::size_t i = 0; i < q.rep.size(); ++i) accepting[i] = labels[q.rep[i]] != 0;
  return Dfa(a.alphabet(), std::move(q.delta), std::move(accepting));
}

Dfa normalize_padding(const Dfa& a) {
  const std::size_t n = a.num_states();
  std::vector<char> accepting(n);
  for (std::size_t s = 0; s < n; ++s) accepting[s] = a.accepting(static_cast<State>(s));
  // Fixpoint along the zero letter: each state has one zero-successor.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!accepting[s] && accepting[a.next(static_cast<State>(s), 0)]) {
        accepting[s] = 1;
        changed = true;
      }
    }
  }
  return minimize(Dfa(a.alphabet(), a.table(), std::move(accepting), a.initial()));
}

bool is_padding_stable(const Dfa& a) {
  const auto order =
      bfs_order(a.num_states(), a.alphabet().size(), a.table(), a.initial());
  for (State s : order) {
    if (a.accepting(s) != a.accepting(a.next(s, 0))) return false;
  }
  return true;
}

bool is_empty(const Dfa& a) {
  const auto order =
      bfs_order(a.num_states(), a.alphabet().size(), a.table(), a.initial());
  return std::none_of(order.begin(), order.end(),
                      [&](State s) { return a.accepting(s); });
}

bool equivalent(const Dfa& a, const Dfa& b) {
  if (a.bases() != b.bases()) return false;
  const auto id = identity_map(a.alphabet().size());
  Limits unlimited{std::numeric_limits<std::size_t>::max()};
  return is_empty(
      explore_product(a, id, &b, id, a.alphabet(), BoolOp::Xor, unlimited));
}

std::vector<std::vector<std::uint64_t>> enumerate(const Dfa& a,
                                                  std::size_t max_len) {
  const auto live = coreachable(a);
  const std::size_t tracks = a.num_tracks();
  std::set<std::vector<std::uint64_t>> found;
  std::vector<std::uint64_t> values(tracks, 0);
  std::vector<std::uint64_t> weight(tracks, 1);

  std::function<void(State, std::size_t)> visit = [&](State s,
                                                      std::size_t depth) {
    if (a.accepting(s)) found.insert(values);
    if (depth == max_len) return;
    const auto saved = values;
    const auto saved_weight = weight;
    for (std::size_t c = 0; c < a.alphabet().size(); ++c) {
      const State t = a.next(s, c);
      if (!live[t]) continue;
      for (std::size_t i = 0; i < tracks; ++i) {
        values[i] = saved[i] + static_cast<std::uint64_t>(a.alphabet().digit(c, i)) *
                                   saved_weight[i];
        weight[i] = saved_weight[i] * static_cast<std::uint64_t>(a.bases()[i]);
      }
      visit(t, depth + 1);
    }
    values = saved;
    weight = saved_weight;
  };
  if (live[a.initial()]) visit(a.initial(), 0);
  return {found.begin(), found.end()};
}

Dfa output_language(const Dfao& m, int value) {
  const std::size_t n = m.num_states();
  const std::size_t k = m.alphabet().size();
  const auto dead = static_cast<State>(n);
  std::vector<State> delta((n + 1) * k, dead);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t c = 0; c < k; ++c) {
      const State t = m.next(static_cast<State>(s), c);
      delta[s * k + c] = t == kNoState ? dead : t;
    }
  }
  std::vector<char> accepting(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) accepting[s] = m.output(static_cast<State>(s)) == value;
  return minimize(Dfa(m.alphabet(), std::move(delta), std::move(accepting),
                      m.initial()));
}

Dfao minimize(const Dfao& m) {
  const std::size_t n = m.num_states();
  const std::size_t k = m.alphabet().size();
  // Complete with an explicit sink carrying a label no real state has.
  const auto sink = static_cast<State>(n);
  std::vector<State> delta((n + 1) * k, sink);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t c = 0; c < k; ++c) {
      const State t = m.next(static_cast<State>(s), c);
      delta[s * k + c] = t == kNoState ? sink : t;
    }
  }
  // Labels are ranks of outputs so the sink can take a fresh value.
  std::vector<int> distinct(m.outputs());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> labels(n + 1);
  for (std::size_t s = 0; s < n; ++s) {
    labels[s] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), m.output(static_cast<State>(s))) -
        distinct.begin());
  }
  labels[n] = static_cast<int>(distinct.size());

  const auto order = bfs_order(n + 1, k, delta, m.initial());
  const auto blocks = refine(n + 1, k, delta, labels);
  auto q = quotient(k, delta, order, blocks, m.initial(), blocks[n]);
  std::vector<int> outputs(q.rep.size());
  for (std::size_t i = 0; i < q.rep.size(); ++i) outputs[i] = m.output(q.rep[i]);
  return Dfao(m.alphabet(), std::move(q.delta), std::move(outputs));
}

bool equivalent(const Dfao& a, const Dfao& b) {
  if (a.bases() != b.bases()) return false;
  const std::size_t k = a.alphabet().size();
  std::set<std::pair<State, State>> seen;
  std::deque<std::pair<State, State>> queue;
  seen.emplace(a.initial(), b.initial());
  queue.emplace_back(a.initial(), b.initial());
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    if ((x == kNoState) != (y == kNoState)) return false;
    if (x == kNoState) continue;
    if (a.output(x) != b.output(y)) return false;
    for (std::size_t c = 0; c < k; ++c) {
      const std::pair<State, State> next{a.next(x, c), b.next(y, c)};
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return true;
}

}  // namespace stewart
