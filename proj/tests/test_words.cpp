#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stewart/oracles.hpp"
#include "stewart/words.hpp"

using namespace stewart;

namespace {

// Independent morphism oracle for the choral sequence: 0 -> 001, 1 -> 011.
std::string choral_morphism(int k) {
  std::string w = "0";
  for (int i = 0; i < k; ++i) {
    std::string next;
    for (char c : w) next += c == '0' ? "001" : "011";
    w = next;
  }
  return w;
}

}  // namespace

TEST(Pattern, SymbolTable) {
  EXPECT_EQ(symbols(Pattern::a), "01?");
  EXPECT_EQ(symbols(Pattern::b), "10?");
  EXPECT_EQ(symbols(Pattern::c), "0?1");
  EXPECT_EQ(symbols(Pattern::d), "1?0");
  EXPECT_EQ(symbols(Pattern::e), "?01");
  EXPECT_EQ(symbols(Pattern::f), "?10");
  for (Pattern p : kAllPatterns) {
    std::string s(symbols(p));
    std::sort(s.begin(), s.end());
    EXPECT_EQ(s, "01?");
    EXPECT_EQ(pattern_from_letter(letter(p)), p);
    EXPECT_EQ(pattern_from_digit(digit(p)), p);
    EXPECT_EQ(symbols(p)[hole_index(p)], kHole);
  }
}

TEST(PatternSeq, ParseAndDigits) {
  const PatternSeq t = PatternSeq::parse("afe");
  EXPECT_EQ(t.str(), "afe");
  EXPECT_EQ(t.digits().digits, (std::vector<int>{1, 6, 5}));
  EXPECT_EQ(PatternSeq::from_value(t.value()), t);
  EXPECT_THROW(PatternSeq::parse("ag"), std::invalid_argument);
}

TEST(PatternSeq, ZeroDigitIsPaddingOnly) {
  EXPECT_EQ(PatternSeq::from_digits({1, 6, 0, 0}), PatternSeq::parse("af"));
  EXPECT_THROW(PatternSeq::from_digits({1, 0, 6}), std::invalid_argument);
  EXPECT_THROW(pattern_from_digit(0), std::invalid_argument);
}

TEST(UltimatelyPeriodic, ParseAndCanonical) {
  const auto t = UltimatelyPeriodicSeq::parse("af(c)");
  EXPECT_EQ(t.preperiod().str(), "af");
  EXPECT_EQ(t.period().str(), "c");
  EXPECT_EQ(t.prefix(5).str(), "afccc");
  EXPECT_EQ(UltimatelyPeriodicSeq::parse("ad(ad)"), UltimatelyPeriodicSeq::parse("(ad)"));
  EXPECT_EQ(UltimatelyPeriodicSeq::parse("(cc)").canonical().str(), "(c)");
  EXPECT_EQ(UltimatelyPeriodicSeq::parse("d(ad)").canonical().str(), "(da)");
  EXPECT_THROW(UltimatelyPeriodicSeq::parse("a()"), std::invalid_argument);
  EXPECT_THROW(UltimatelyPeriodicSeq::parse("abc"), std::invalid_argument);
}

TEST(Expand, Examples) {
  EXPECT_EQ(expand(PartialWord("?"), Pattern::a).str(), "01?");
  EXPECT_EQ(expand(PartialWord("01?"), Pattern::f).str(), "01?011010");
  EXPECT_EQ(expand(PartialWord("0?1"), Pattern::c).str(), "0010?1011");
}

TEST(Expand, RequiresExactlyOneHole) {
  EXPECT_THROW(expand(PartialWord("01"), Pattern::a), std::invalid_argument);
  EXPECT_THROW(expand(PartialWord("??"), Pattern::a), std::invalid_argument);
}

TEST(ToeplitzPrefix, Examples) {
  EXPECT_EQ(toeplitz_prefix(PatternSeq()).str(), "?");
  EXPECT_EQ(toeplitz_prefix(PatternSeq::parse("afe")).str(), "01?011010010011010011011010");
  EXPECT_EQ(toeplitz_prefix(PatternSeq::parse("cc")).str(), "0010?1011");
}

TEST(ToeplitzPrefix, LengthAndSingleHole) {
  for (std::size_t len = 0; len <= 5; ++len) {
    const std::size_t expected = static_cast<std::size_t>(std::pow(3, len));
    for_each_sequence(len, [&](const PatternSeq& t) {
      const PartialWord w = toeplitz_prefix(t);
      ASSERT_EQ(w.size(), expected);
      ASSERT_EQ(w.hole_count(), 1u);
    });
  }
}

TEST(ToeplitzPrefix, ExtensionOnlyFillsHoles) {
  for_each_sequence(4, [&](const PatternSeq& t) {
    const std::string full = toeplitz_prefix(t).str();
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::string w = toeplitz_prefix(t.prefix(k)).str();
      for (std::size_t i = 0; i < full.size(); ++i) {
        const char c = w[i % w.size()];
        if (c != kHole) ASSERT_EQ(full[i], c) << t.str() << " at " << i;
      }
    }
  });
}

TEST(ToeplitzPrefix, NumericView) {
  EXPECT_EQ(toeplitz_prefix(PatternSeq::parse("a")).numeric(), (std::vector<int>{0, 1, 2}));
}

TEST(StewartPrefix, NamedWords) {
  EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("(c)"), 9), "001001011");
  EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("(ab)"), 9), "011010010");
  EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("(e)"), 3, '0'), "001");
  EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("(e)"), 3, '1'), "101");
  EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("(c)"), 0), "");
}

TEST(StewartPrefix, UnresolvedHoleNeedsFill) {
  EXPECT_THROW(stewart_prefix(UltimatelyPeriodicSeq::parse("(e)"), 3), UnresolvedHole);
  EXPECT_THROW(stewart_prefix(UltimatelyPeriodicSeq::parse("a(ef)"), 30), UnresolvedHole);
  // The hole of ae^w sits at position 2 forever.
  try {
    stewart_prefix(UltimatelyPeriodicSeq::parse("a(e)"), 10);
    FAIL();
  } catch (const UnresolvedHole& h) {
    EXPECT_EQ(h.position(), 2u);
  }
  // Beyond the fixed hole no fill is needed if it is outside the window.
  EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("a(e)"), 2), "01");
}

TEST(StewartPrefix, ChoralMatchesMorphism) {
  for (int k = 0; k <= 7; ++k) {
    const std::string m = choral_morphism(k);
    EXPECT_EQ(stewart_prefix(UltimatelyPeriodicSeq::parse("(c)"), m.size()), m);
  }
}

TEST(StewartPrefix, AgreesWithFinitePrefix) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    PatternSeq pre, per;
    for (std::size_t k = rng() % 3; k > 0; --k) pre.push_back(kAllPatterns[rng() % 6]);
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) per.push_back(kAllPatterns[rng() % 6]);
    const UltimatelyPeriodicSeq t(pre, per);
    const std::string w = stewart_prefix(t, 243, '0');
    const std::string fin = toeplitz_prefix(t.prefix(5)).str();
    for (std::size_t j = 0; j < 243; ++j) {
      if (fin[j] != kHole) ASSERT_EQ(w[j], fin[j]) << t.str();
    }
  }
}

TEST(Generic, FourStages) {
  const GenericPatternSet ps({"0?1?"});
  EXPECT_EQ(generic_toeplitz_prefix(ps, {"0?1?", "0?1?", "0?1?", "0?1?"}, 32),
            "001001100011011?001001110011011?");
  EXPECT_EQ(generic_toeplitz_prefix(ps, {"0?1?"}, 8), "0?1?0?1?");
}

TEST(Generic, StewartSetMatchesToeplitz) {
  const auto ps = GenericPatternSet::stewart();
  EXPECT_EQ(generic_toeplitz_prefix(ps, {"01?", "?10"}, 9), toeplitz_prefix(PatternSeq::parse("af")).str());
  for_each_sequence(3, [&](const PatternSeq& t) {
    std::vector<std::string> choice;
    for (Pattern p : t.letters()) choice.emplace_back(symbols(p));
    ASSERT_EQ(generic_toeplitz_prefix(ps, choice, 27), toeplitz_prefix(t).str());
  });
}

TEST(Generic, Validation) {
  EXPECT_THROW(GenericPatternSet({}), std::invalid_argument);
  EXPECT_THROW(GenericPatternSet({"0?", "0?1"}), std::invalid_argument);
  EXPECT_THROW(GenericPatternSet({"01"}), std::invalid_argument);
  const GenericPatternSet ps({"0?"});
  EXPECT_THROW(generic_toeplitz_prefix(ps, {"1?"}, 4), std::invalid_argument);
  EXPECT_THROW(generic_toeplitz_prefix(ps, {}, 4), std::invalid_argument);
}

TEST(Hamming, Examples) {
  EXPECT_EQ(hamming(Pattern::a, Pattern::b), 2);
  EXPECT_EQ(hamming(Pattern::a, Pattern::a), 0);
  EXPECT_EQ(hamming(Pattern::a, Pattern::d), 3);
}

TEST(Hamming, AllPairs) {
  for (Pattern g : kAllPatterns) {
    for (Pattern h : kAllPatterns) {
      const int d = hamming(g, h);
      EXPECT_EQ(d, hamming(h, g));
      EXPECT_EQ(d == 0, g == h);
      EXPECT_TRUE(d == 0 || d == 2 || d == 3);
      EXPECT_EQ(classify_pair(g, h), d == 2 ? PairClass::InY : PairClass::InX);
    }
  }
  EXPECT_EQ(classify_pair(Pattern::a, Pattern::b), PairClass::InY);
  EXPECT_EQ(classify_pair(Pattern::c, Pattern::c), PairClass::InX);
  EXPECT_EQ(classify_pair(Pattern::a, Pattern::d), PairClass::InX);
}

TEST(Factors, Examples) {
  EXPECT_EQ(factors("01?", 1, false), (std::set<std::string>{"0", "1", "?"}));
  EXPECT_EQ(factors("01?011010", 0, true), (std::set<std::string>{""}));
  EXPECT_THROW(factors("01", 3, false), std::invalid_argument);
}

TEST(Factors, BooleanMatchesDirectScan) {
  const std::string w = "01?011010";
  std::set<std::string> expected;
  for (std::size_t i = 0; i + 2 <= w.size(); ++i) {
    const std::string f = w.substr(i, 2);
    if (f.find('?') == std::string::npos) expected.insert(f);
  }
  EXPECT_EQ(factors(w, 2, true), expected);
  EXPECT_EQ(expected, (std::set<std::string>{"01", "11", "10"}));
}

TEST(PeriodExponent, Examples) {
  const auto sq = period_exponent("0101");
  EXPECT_EQ(sq.period, 2u);
  EXPECT_EQ(sq.exponent, Rational::make(2, 1));
  const auto cube = period_exponent("000");
  EXPECT_EQ(cube.period, 1u);
  EXPECT_EQ(cube.exponent, Rational::make(3, 1));
  EXPECT_EQ(period_exponent("0110").exponent, Rational::make(4, 3));
  EXPECT_EQ(Rational::make(52, 18).str(), "26/9");
  EXPECT_THROW(period_exponent(""), std::invalid_argument);
}

TEST(PeriodExponent, PeriodIsMinimal) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    std::string w(1 + rng() % 12, '0');
    for (char& c : w) c = static_cast<char>('0' + rng() % 2);
    const auto pe = period_exponent(w);
    auto has_period = [&](std::size_t p) {
      for (std::size_t j = 0; j + p < w.size(); ++j) {
        if (w[j] != w[j + p]) return false;
      }
      return true;
    };
    EXPECT_TRUE(has_period(pe.period));
    for (std::size_t p = 1; p < pe.period; ++p) EXPECT_FALSE(has_period(p));
    EXPECT_EQ(pe.exponent, Rational::make(w.size(), pe.period));
  }
}
