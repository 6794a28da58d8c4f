#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "stewart/arith.hpp"
#include "stewart/errors.hpp"
#include "stewart/oracles.hpp"
#include "stewart/words.hpp"

using namespace stewart;

namespace {

bool accepts(const Dfa& a, std::vector<std::uint64_t> v) { return a.accepts_values(v); }

bool is_power3(std::uint64_t x) {
  if (x == 0) return false;
  while (x % 3 == 0) x /= 3;
  return x == 1;
}

std::uint64_t pow3(std::size_t k) {
  std::uint64_t p = 1;
  while (k--) p *= 3;
  return p;
}

std::vector<PatternSeq> sequences_up_to(std::size_t len) {
  std::vector<PatternSeq> out;
  for (std::size_t l = 0; l <= len; ++l) for_each_sequence(l, [&](const PatternSeq& t) { out.push_back(t); });
  return out;
}

}  // namespace

TEST(Relations, Examples) {
  EXPECT_TRUE(accepts(rel_eq(3), {5, 5}));
  EXPECT_FALSE(accepts(rel_eq(3), {5, 6}));
  EXPECT_TRUE(accepts(rel_lt(3), {2, 10}));
  EXPECT_TRUE(equivalent(rel_leq(3), product(rel_lt(3), rel_eq(3), BoolOp::Or)));
  EXPECT_TRUE(accepts(rel_add(3), {1, 2, 3}));
  EXPECT_TRUE(rel_add(3).accepts(align({{3, {1}}, {3, {2}}, {3, {0, 1}}})));
}

TEST(Relations, AgreeWithIntegersUpTo200) {
  for (int base : {3, 7}) {
    const Dfa eq = rel_eq(base), lt = rel_lt(base), le = rel_leq(base);
    for (std::uint64_t x = 0; x <= 200; ++x) {
      for (std::uint64_t y = 0; y <= 200; ++y) {
        ASSERT_EQ(accepts(eq, {x, y}), x == y);
        ASSERT_EQ(accepts(lt, {x, y}), x < y);
        ASSERT_EQ(accepts(le, {x, y}), x <= y);
      }
    }
  }
}

TEST(Relations, Addition) {
  const Dfa add = rel_add(3);
  for (std::uint64_t n = 0; n <= 100; ++n) ASSERT_TRUE(accepts(add, {0, n, n}));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t x = rng() % 100000, y = rng() % 100000;
    const std::uint64_t z = rng() % 4 == 0 ? rng() % 200000 : x + y;
    ASSERT_EQ(accepts(add, {x, y, z}), x + y == z) << x << "+" << y << "=" << z;
  }
}

TEST(Relations, Constants) {
  for (std::uint64_t c : {0, 1, 5, 81, 100}) {
    const Dfa a = rel_const(c, 3);
    for (std::uint64_t x = 0; x <= 200; ++x) ASSERT_EQ(accepts(a, {x}), x == c);
  }
}

TEST(MulDiv, Examples) {
  EXPECT_TRUE(accepts(div_const(9, 3), {81, 9}));
  EXPECT_TRUE(accepts(mul_const(2, 3), {5, 10}));
  EXPECT_TRUE(accepts(div_const(27, 3), {81, 3}));
  EXPECT_THROW(mul_const(0, 3), std::invalid_argument);
  EXPECT_THROW(div_const(0, 3), std::invalid_argument);
}

TEST(MulDiv, AgreeWithIntegers) {
  for (std::uint64_t c : {1, 2, 3, 4, 7, 9, 27, 36, 243}) {
    const Dfa mul = mul_const(c, 3), div = div_const(c, 3);
    for (std::uint64_t x = 0; x <= 200; ++x) {
      for (std::uint64_t y = 0; y <= 200; ++y) {
        ASSERT_EQ(accepts(mul, {x, y}), c * x == y) << c << "*" << x;
        ASSERT_EQ(accepts(div, {x, y}), x / c == y) << x << "/" << c;
      }
    }
  }
}

TEST(Regex, Power3) {
  const Dfa p = builtin_power3();
  for (std::uint64_t x = 0; x <= 200; ++x) ASSERT_EQ(accepts(p, {x}), is_power3(x));
}

TEST(Regex, Link) {
  const Dfa link = builtin_link();
  EXPECT_TRUE(accepts(link, {9, PatternSeq::parse("af").value()}));
  EXPECT_FALSE(accepts(link, {3, PatternSeq::parse("af").value()}));
  for (const PatternSeq& t : sequences_up_to(3)) {
    for (std::uint64_t x = 0; x <= 200; ++x) {
      ASSERT_EQ(accepts(link, {x, t.value()}), x == pow3(t.size())) << x << " " << t.str();
    }
  }
  // A value with an interior zero digit is not a pattern sequence.
  EXPECT_FALSE(accepts(link, {27, decode({7, {1, 0, 2}})}));
}

TEST(Regex, Pref) {
  const Dfa pref = builtin_pref();
  EXPECT_TRUE(accepts(pref, {PatternSeq::parse("af").value(), PatternSeq::parse("afe").value()}));
  EXPECT_FALSE(accepts(pref, {PatternSeq::parse("fe").value(), PatternSeq::parse("afe").value()}));
  const auto seqs = sequences_up_to(2);
  for (const PatternSeq& t1 : seqs) {
    for (const PatternSeq& t2 : seqs) {
      const bool expected = t1.size() <= t2.size() && t2.prefix(t1.size()) == t1;
      ASSERT_EQ(accepts(pref, {t1.value(), t2.value()}), expected) << t1.str() << " " << t2.str();
    }
  }
}

TEST(Regex, Bnd) {
  const Dfa bnd = builtin_bnd();
  EXPECT_TRUE(accepts(bnd, {5, 9}));
  EXPECT_TRUE(accepts(bnd, {9, 9}));
  for (std::uint64_t x = 0; x <= 200; ++x) {
    std::uint64_t ceil3 = 1;
    while (ceil3 < x) ceil3 *= 3;
    ASSERT_TRUE(accepts(bnd, {x, ceil3})) << x;
    for (std::uint64_t y = 0; y <= 200; ++y) {
      ASSERT_EQ(accepts(bnd, {x, y}), is_power3(y) && x <= y) << x << " " << y;
    }
  }
}

TEST(Regex, Differ) {
  const Dfa differ = builtin_differ();
  const PatternSeq t = PatternSeq::parse("ad"), u = PatternSeq::parse("bd");
  EXPECT_TRUE(accepts(differ, {t.value(), u.value(), 1}));
  EXPECT_FALSE(accepts(differ, {t.value(), u.value(), 3}));
  const auto seqs = sequences_up_to(2);
  for (const PatternSeq& a : seqs) {
    for (std::uint64_t x = 0; x <= 30; ++x) ASSERT_FALSE(accepts(differ, {a.value(), a.value(), x}));
    for (const PatternSeq& b : seqs) {
      const auto j = a.size() == b.size() ? first_non_x_index(a, b) : std::nullopt;
      for (std::uint64_t x = 0; x <= 30; ++x) {
        ASSERT_EQ(accepts(differ, {a.value(), b.value(), x}), j && x == pow3(*j))
            << a.str() << " " << b.str() << " " << x;
      }
    }
  }
}

TEST(Regex, DifferTuplesPartitionPairs) {
  std::string_view pattern;
  for (const auto& b : builtin_regexes()) {
    if (b.name == "differ") pattern = b.pattern;
  }
  const std::string text(pattern);
  const std::size_t first_end = text.find(")*");
  const std::size_t second_end = text.find(')', first_end + 2);
  const std::regex tuple(R"(\[(\d),(\d),(\d)\])");
  std::set<std::pair<int, int>> x_pairs, y_pairs;
  auto collect = [&](std::size_t from, std::size_t to, std::set<std::pair<int, int>>& out, int mark) {
    const std::string part = text.substr(from, to - from);
    for (auto it = std::sregex_iterator(part.begin(), part.end(), tuple); it != std::sregex_iterator(); ++it) {
      EXPECT_EQ(std::stoi((*it)[3]), mark);
      out.insert({std::stoi((*it)[1]), std::stoi((*it)[2])});
    }
  };
  collect(0, first_end, x_pairs, 0);
  collect(first_end + 2, second_end, y_pairs, 1);
  EXPECT_EQ(x_pairs.size() + y_pairs.size(), 36u);
  for (Pattern g : kAllPatterns) {
    for (Pattern h : kAllPatterns) {
      const std::pair<int, int> p{digit(g), digit(h)};
      const bool in_x = classify_pair(g, h) == PairClass::InX;
      EXPECT_EQ(x_pairs.count(p) == 1, in_x);
      EXPECT_EQ(y_pairs.count(p) == 1, !in_x);
    }
  }
}

TEST(Regex, Malformed) {
  EXPECT_THROW(compile_regex({{3}, "0*(1"}), ParseError);
  EXPECT_THROW(compile_regex({{3}, "3"}), ParseError);
  EXPECT_THROW(compile_regex({{3, 3}, "[1,2,0]"}), ParseError);
  EXPECT_THROW(compile_regex({{3, 3}, "[1,5]"}), ParseError);
}

TEST(Regex, PaddingNormalized) {
  for (const auto& b : builtin_regexes()) {
    EXPECT_TRUE(is_padding_stable(compile_regex({b.bases, std::string(b.pattern)}))) << b.name;
  }
}
