#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ptlab/core/error.hpp"
#include "ptlab/core/index_set.hpp"
#include "ptlab/core/json_io.hpp"
#include "ptlab/core/math.hpp"
#include "ptlab/core/rng.hpp"

using namespace ptlab;

TEST(BitString, WeightAndLength) {
  const auto x = BitString::from_bits("1011000");
  EXPECT_EQ(x.size(), 7u);
  EXPECT_EQ(x.weight(), 3u);
  EXPECT_TRUE(x.get(0));
  EXPECT_FALSE(x.get(1));
  EXPECT_EQ(BitString(130).weight(), 0u);
  EXPECT_EQ(BitString::ones(130).weight(), 130u);
}

TEST(BitString, HexRoundTrip) {
  RngStream rng(1, "test.hex");
  for (std::size_t n : {1u, 7u, 16u, 63u, 64u, 65u, 100u, 257u}) {
    const auto x = random_bitstring(rng, n);
    EXPECT_EQ(BitString::from_hex(n, x.to_hex()), x) << n;
  }
  EXPECT_EQ(BitString::from_integer(16, 0xffff).to_hex(), "ffff");
  EXPECT_EQ(BitString::from_integer(8, 5).to_integer(), 5u);
}

TEST(BitString, MismatchedLengthsThrow) {
  BitString a(8), b(9);
  EXPECT_THROW(a ^= b, InvalidArgument);
  EXPECT_THROW(count_and(a, b), InvalidArgument);
}

TEST(BitString, ComplementStaysInsideDimension) {
  const auto x = BitString::from_bits("101");
  EXPECT_EQ((~x).to_bits(), "010");
  EXPECT_EQ((~BitString(70)).weight(), 70u);
}

TEST(FlipSet, EmptyAndFull) {
  EXPECT_EQ(flip_set(BitString(4), IndexSet(4, {})), BitString(4));
  EXPECT_EQ(flip_set(BitString(4), IndexSet::from_one_based(4, {1, 2, 3, 4})), BitString::ones(4));
}

TEST(FlipSet, Involution) {
  RngStream rng(2, "test.flip");
  for (int t = 0; t < 1000; ++t) {
    const auto x = random_bitstring(rng, 32);
    const auto mask = random_bitstring(rng, 32);
    const auto s = IndexSet::from_mask(mask);
    const auto y = flip_set(x, s);
    EXPECT_EQ(y.size(), 32u);
    EXPECT_EQ(flip_set(y, s), x);
    EXPECT_EQ(y, x ^ mask);
  }
}

TEST(Precedes, Basics) {
  EXPECT_TRUE(precedes(BitString::from_bits("000"), BitString::from_bits("111")));
  const auto x = BitString::from_bits("101");
  EXPECT_FALSE(precedes(x, x));
  EXPECT_FALSE(precedes(BitString::from_bits("10"), BitString::from_bits("01")));
}

TEST(Precedes, StrictPartialOrderOnSamples) {
  RngStream rng(3, "test.order");
  int chains = 0;
  for (int t = 0; t < 3000; ++t) {
    auto a = random_bitstring(rng, 6), b = random_bitstring(rng, 6), c = random_bitstring(rng, 6);
    EXPECT_FALSE(precedes(a, b) && precedes(b, a));
    if (precedes(a, b) && precedes(b, c)) {
      ++chains;
      EXPECT_TRUE(precedes(a, c));
    }
  }
  EXPECT_GT(chains, 0);
}

TEST(IndexSet, SortedAndOneBased) {
  IndexSet s(10, {7, 2, 5});
  EXPECT_EQ(s.members(), (std::vector<std::uint32_t>{2, 5, 7}));
  EXPECT_EQ(s.one_based(), (std::vector<std::uint32_t>{3, 6, 8}));
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(4));
  EXPECT_EQ(IndexSet::from_mask(s.mask()), s);
  EXPECT_THROW(IndexSet(4, {4}), InvalidArgument);
  EXPECT_THROW(IndexSet(4, {1, 1}), InvalidArgument);
  EXPECT_THROW(IndexSet::from_one_based(4, {0}), InvalidArgument);
}

TEST(Rng, DrawRangeOne) {
  RngStream rng(4, "test.one");
  for (int t = 0; t < 100; ++t) EXPECT_EQ(rng.draw(1), 1u);
  EXPECT_THROW(rng.draw(0), InvalidArgument);
}

TEST(Rng, EqualParametersGiveEqualStreams) {
  RngStream a(9, "tag", {1, 2}), b(9, "tag", {1, 2});
  for (int t = 0; t < 10000; ++t) ASSERT_EQ(a.draw(1000), b.draw(1000));
}

TEST(Rng, TagsAndCountersSeparateStreams) {
  RngStream base(9, "tag", {1}), other_tag(9, "tag2", {1}), other_ctr(9, "tag", {2}), other_seed(10, "tag", {1});
  int same_tag = 0, same_ctr = 0, same_seed = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto v = base.next_u64();
    same_tag += v == other_tag.next_u64();
    same_ctr += v == other_ctr.next_u64();
    same_seed += v == other_seed.next_u64();
  }
  EXPECT_EQ(same_tag + same_ctr + same_seed, 0);
}

TEST(Rng, IndependentTagsUncorrelated) {
  RngStream a(11, "left"), b(11, "right");
  const int m = 100000;
  double sxy = 0, sx = 0, sy = 0;
  for (int t = 0; t < m; ++t) {
    const double x = a.uniform(), y = b.uniform();
    sxy += x * y;
    sx += x;
    sy += y;
  }
  const double cov = sxy / m - (sx / m) * (sy / m);
  // Correlation of independent uniforms has sd 1/sqrt(m); variance of U is 1/12.
  EXPECT_LT(std::abs(cov * 12.0), 5.0 / std::sqrt(double(m)));
}

TEST(Rng, UniformFrequenciesWithinFiveSigma) {
  RngStream rng(12, "test.freq");
  const int m = 1000000, range = 16;
  std::vector<int> count(range + 1, 0);
  for (int t = 0; t < m; ++t) ++count[rng.draw(range)];
  EXPECT_EQ(count[0], 0);
  const double p = 1.0 / range, sigma = std::sqrt(m * p * (1 - p));
  double chi2 = 0;
  for (int v = 1; v <= range; ++v) {
    EXPECT_LT(std::abs(count[v] - m * p), 5 * sigma) << v;
    chi2 += (count[v] - m * p) * (count[v] - m * p) / (m * p);
  }
  // 15 degrees of freedom; 0.1% upper tail is 37.7.
  EXPECT_LT(chi2, 37.7);
}

TEST(Rng, SampleWithoutReplacementDistinct) {
  RngStream rng(13, "test.swr");
  std::vector<std::uint32_t> pool(50);
  for (std::uint32_t k = 0; k < 50; ++k) pool[k] = k;
  const auto pick = sample_without_replacement(rng, pool, 20);
  EXPECT_EQ(pick.size(), 20u);
  EXPECT_EQ(std::set<std::uint32_t>(pick.begin(), pick.end()).size(), 20u);
  EXPECT_THROW(sample_without_replacement(rng, pool, 51), InvalidArgument);
}

TEST(Math, IntegerSquareRoot) {
  for (std::uint64_t v = 0; v < 2000; ++v) {
    const auto r = isqrt(v);
    EXPECT_LE(r * r, v);
    EXPECT_GT((r + 1) * (r + 1), v);
  }
  EXPECT_TRUE(is_perfect_square(100));
  EXPECT_FALSE(is_perfect_square(15));
}

TEST(JsonIo, BitStringRoundTrip) {
  const auto x = BitString::from_bits("0110100111");
  EXPECT_EQ(bitstring_from_json(bitstring_to_json(x)), x);
  EXPECT_THROW(bitstring_from_json(Json::object()), InvalidArgument);
  const IndexSet s(10, {0, 9});
  EXPECT_EQ(index_set_to_json(s), Json::parse("[1,10]"));
  EXPECT_EQ(index_set_from_json(10, index_set_to_json(s)), s);
}

TEST(JsonIo, MissingFileIsIoError) {
  try {
    read_text_file("/nonexistent/ptlab/file.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}
