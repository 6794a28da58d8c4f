#include "stewart/stewart_automaton.hpp"

#include "stewart/walnut_format.hpp"

namespace stewart {

// Pattern track lsd_7 (letters a..f coded 1..6, 0 is padding), position track
// lsd_3. Outputs 0, 1 and 2 for '?'. States 3-5 only read zero tuples.
const std::string_view kStewartAutomatonText = R"(lsd_7 lsd_3
0 2
0 0 -> 3
1 0 -> 1
1 1 -> 2
1 2 -> 0
2 0 -> 2
2 1 -> 1
2 2 -> 0
3 0 -> 1
3 1 -> 0
3 2 -> 2
4 0 -> 2
4 1 -> 0
4 2 -> 1
5 0 -> 0
5 1 -> 1
5 2 -> 2
6 0 -> 0
6 1 -> 2
6 2 -> 1

1 0
0 0 -> 4
0 1 -> 1
0 2 -> 1
1 0 -> 1
1 1 -> 1
1 2 -> 1
2 0 -> 1
2 1 -> 1
2 2 -> 1
3 0 -> 1
3 1 -> 1
3 2 -> 1
4 0 -> 1
4 1 -> 1
4 2 -> 1
5 0 -> 1
5 1 -> 1
5 2 -> 1
6 0 -> 1
6 1 -> 1
6 2 -> 1

2 1 
0 0 -> 5
1 0 -> 2
1 1 -> 2
1 2 -> 2
2 0 -> 2
2 1 -> 2
2 2 -> 2
3 0 -> 2
3 1 -> 2
3 2 -> 2
4 0 -> 2
4 1 -> 2
4 2 -> 2
5 0 -> 2
5 1 -> 2
5 2 -> 2
6 0 -> 2
6 1 -> 2
6 2 -> 2

3 2
0 0 -> 3

4 0
0 0 -> 4

5 1
0 0 -> 5
)";

const Dfao& stewart_automaton() {
  static const Dfao m =
      read_walnut_dfao(kStewartAutomatonText, Totality::kAllowPartial);
  return m;
}

std::optional<int> stewart_symbol(const PatternSeq& t, std::uint64_t n) {
  const Dfao& m = stewart_automaton();
  const auto tv = align({t.digits(), encode(n, 3)});
  return m.eval(tv);
}

}  // namespace stewart
