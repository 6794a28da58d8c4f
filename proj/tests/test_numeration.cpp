#include <gtest/gtest.h>

#include <random>

#include "stewart/numeration.hpp"
#include "stewart/words.hpp"

using namespace stewart;

TEST(Encode, ZeroIsEmpty) { EXPECT_TRUE(encode(0, 3).digits.empty()); }

TEST(Encode, LsdFirst) { EXPECT_EQ(encode(10, 3).digits, (std::vector<int>{1, 0, 1})); }

TEST(Encode, PatternSequenceValue) {
  EXPECT_EQ(encode(PatternSeq::parse("afe").value(), 7).digits, (std::vector<int>{1, 6, 5}));
}

TEST(Encode, RejectsBaseBelowTwo) { EXPECT_THROW(encode(5, 1), std::invalid_argument); }

TEST(Decode, Basics) {
  EXPECT_EQ(decode({3, {1, 0, 1}}), 10u);
  EXPECT_EQ(decode({3, {}}), 0u);
  EXPECT_EQ(decode({7, {1, 6, 5, 0, 0}}), decode({7, {1, 6, 5}}));
}

TEST(Decode, DigitOutOfRange) { EXPECT_THROW(decode({3, {1, 3}}), std::invalid_argument); }

TEST(Decode, RoundTripAndPadding) {
  std::mt19937_64 rng(7);
  for (int base : {3, 7}) {
    for (std::uint64_t n = 0; n < 2000; ++n) {
      DigitString d = encode(n, base);
      EXPECT_EQ(decode(d), n);
      if (!d.digits.empty()) EXPECT_NE(d.digits.back(), 0);
      d.digits.push_back(0);
      EXPECT_EQ(decode(d), n);
    }
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t n = rng() >> 20;
      EXPECT_EQ(decode(encode(n, base)), n);
    }
  }
}

TEST(Align, PadsShorterTracks) {
  const TrackVector v = align({{3, {1}}, {3, {2, 1}}});
  ASSERT_EQ(v.length(), 2u);
  EXPECT_EQ(v.column(0), (std::vector<int>{1, 2}));
  EXPECT_EQ(v.column(1), (std::vector<int>{0, 1}));
}

TEST(Align, SingleTrackUnchanged) {
  const TrackVector v = align({{7, {1, 6, 5}}});
  EXPECT_EQ(v.track(0).digits, (std::vector<int>{1, 6, 5}));
  EXPECT_EQ(v.bases(), (std::vector<int>{7}));
}

TEST(Align, EmptyTracks) {
  const TrackVector v = align({{3, {}}, {7, {}}});
  EXPECT_EQ(v.length(), 0u);
  EXPECT_EQ(v.num_tracks(), 2u);
}

TEST(Align, MixedBasesFromValues) {
  const std::vector<std::uint64_t> values{PatternSeq::parse("af").value(), 2};
  const std::vector<int> bases{7, 3};
  const TrackVector v = align_values(values, bases);
  EXPECT_EQ(v.column(0), (std::vector<int>{1, 2}));
  EXPECT_EQ(v.column(1), (std::vector<int>{6, 0}));
}

TEST(DigitString, PrintsBracketed) { EXPECT_EQ(to_string(encode(10, 3)), "[1,0,1]"); }
