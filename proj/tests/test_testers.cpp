#include <gtest/gtest.h>

#include <algorithm>

#include "ptlab/core/error.hpp"
#include "ptlab/families/bb15.hpp"
#include "ptlab/families/mono.hpp"
#include "ptlab/families/truth_table.hpp"
#include "ptlab/families/unate.hpp"
#include "ptlab/testers/attacks.hpp"
#include "ptlab/testers/unate_violation.hpp"

using namespace ptlab;

namespace {

template <class F>
class Lambda : public BooleanFunction {
 public:
  Lambda(std::size_t n, F f) : n_(n), f_(std::move(f)) {}
  std::size_t dimension() const override { return n_; }
  bool eval(const BitString& x) const override { return f_(x); }

 private:
  std::size_t n_;
  F f_;
};

template <class F>
Lambda<F> fn(std::size_t n, F f) {
  return Lambda<F>(n, std::move(f));
}

TesterConfig with(std::uint64_t q, std::uint64_t seed) {
  TesterConfig c;
  c.q = q;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(CountingOracle, BudgetAndCache) {
  const auto f = fn(4, [](const BitString& x) { return x.get(0); });
  CountingOracle o(f, 2);
  const auto a = BitString::from_bits("1000"), b = BitString::from_bits("0100"), c = BitString::from_bits("0010");
  EXPECT_FALSE(o.peek(a).has_value());
  EXPECT_TRUE(o.query(a));
  EXPECT_TRUE(o.query(a));
  EXPECT_EQ(o.used(), 1u);
  EXPECT_FALSE(o.query(b));
  EXPECT_EQ(o.remaining(), 0u);
  EXPECT_EQ(o.peek(a), std::optional<bool>(true));
  EXPECT_TRUE(o.query(b) == false);
  EXPECT_THROW(o.query(c), BudgetExhausted);
  ASSERT_EQ(o.log().size(), 2u);
  EXPECT_EQ(o.log()[1].first, b);
}

TEST(TesterConfig, JsonOverrides) {
  const auto c = TesterConfig::from_json(Json::parse(R"({"q": 50, "seed": 3})"));
  EXPECT_EQ(c.q, 50u);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.votes, TesterConfig{}.votes);
  EXPECT_THROW(TesterConfig::from_json(Json::parse(R"({"budget": 5})")), InvalidArgument);
  EXPECT_EQ(TesterConfig::from_json(Json()).q, TesterConfig{}.q);
}

TEST(EdgeTester, ConstantAccepts) {
  const auto zero = fn(8, [](const BitString&) { return false; });
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto v = edge_tester(zero, with(400, s));
    EXPECT_FALSE(v.rejected());
    EXPECT_LE(v.queries_used, 400u);
  }
}

TEST(EdgeTester, AntiDictatorRejects) {
  // Each round hits coordinate 0 with probability 1/8 and that edge always violates.
  const auto anti = fn(8, [](const BitString& x) { return !x.get(0); });
  int rejected = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto v = edge_tester(anti, with(400, s));
    if (v.rejected()) {
      ++rejected;
      ASSERT_TRUE(v.witness);
      EXPECT_TRUE(verify_witness(*v.witness, anti));
      EXPECT_TRUE(precedes(v.witness->x, v.witness->y));
    }
  }
  EXPECT_GE(rejected, 198);
}

TEST(Witness, VerificationChecksValues) {
  const auto anti = fn(3, [](const BitString& x) { return !x.get(0); });
  ViolationWitness w;
  w.x = BitString::from_bits("000");
  w.y = BitString::from_bits("100");
  EXPECT_TRUE(verify_witness(w, anti));
  std::swap(w.x, w.y);
  EXPECT_FALSE(verify_witness(w, anti));
}

TEST(Attacks, ConstantAccepts) {
  const auto zero = fn(100, [](const BitString&) { return false; });
  for (std::uint64_t s = 0; s < 5; ++s) {
    EXPECT_FALSE(bb15_attack(zero, 100, with(20000, s)).rejected());
    EXPECT_FALSE(two_level_attack(zero, 100, with(20000, s)).rejected());
  }
}

TEST(Attacks, NeverRejectYesWorld) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto b = BB15Instance::sample(100, World::yes, s);
    const auto m = MonoInstance::sample(100, World::yes, s, Storage::lazy);
    EXPECT_FALSE(bb15_attack(b, 100, with(100000, s)).rejected());
    EXPECT_FALSE(two_level_attack(m, 100, with(100000, s)).rejected());
  }
}

TEST(Attacks, PlantedFlipIsFound) {
  // One term of 10 variables, the no world flips one of them.
  int rejected = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    std::vector<std::uint32_t> term;
    for (std::uint32_t k = 0; k < 10; ++k) term.push_back(static_cast<std::uint32_t>((7 * s + 11 * k) % 100));
    std::sort(term.begin(), term.end());
    term.erase(std::unique(term.begin(), term.end()), term.end());
    const auto f = BB15Instance::from_parts(100, World::no, {term}, IndexSet(100, {term[s % term.size()]}));
    const auto v = bb15_attack(f, 100, with(100000, s));
    if (v.rejected()) {
      ++rejected;
      ASSERT_TRUE(v.witness);
      EXPECT_TRUE(verify_witness(*v.witness, f));
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(Attacks, StopsAtBudget) {
  const auto f = BB15Instance::sample(100, World::no, 1);
  CountingOracle o(f, 500);
  const auto v = bb15_attack(o, 100, with(500, 1));
  EXPECT_LE(o.used(), 500u);
  EXPECT_LE(v.queries_used, 500u);
}

// -- unateness violations -----------------------------------------------------

TEST(UnateViolation, ConstantHasNone) {
  LabeledQueries q;
  RngStream rng(1, "test.uv.const");
  for (int k = 0; k < 20; ++k) q.emplace_back(random_bitstring(rng, 6), true);
  EXPECT_FALSE(has_unate_violation(q, UnateViolationMode::exact_orientations));
  EXPECT_FALSE(has_unate_violation(q, UnateViolationMode::directional_edges));
}

TEST(UnateViolation, FiFourPoints) {
  const FiInstance f(4, 2);
  const std::uint32_t dir = 2 + 2;
  LabeledQueries q;
  for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 1}})
    for (int xi = 0; xi < 2; ++xi) {
      BitString z(6);
      z.set(0, a);
      z.set(1, b);
      z.set(dir, xi);
      q.emplace_back(z, f.eval(z));
    }
  const auto d = has_unate_violation(q, UnateViolationMode::directional_edges);
  ASSERT_TRUE(d && d->directional);
  EXPECT_EQ(d->directional->direction, dir);
  EXPECT_TRUE(verify_witness(*d->directional, f));
  EXPECT_TRUE(has_unate_violation(q, UnateViolationMode::exact_orientations));
  // Three of the four points are consistent with some orientation.
  q.pop_back();
  EXPECT_FALSE(has_unate_violation(q, UnateViolationMode::exact_orientations));
}

TEST(UnateViolation, UnateFunctionHasNone) {
  const auto g = fn(6, [](const BitString& x) { return !x.get(0) && x.get(3); });
  RngStream rng(2, "test.uv.unate");
  for (int trial = 0; trial < 100; ++trial) {
    LabeledQueries q;
    for (int k = 0; k < 12; ++k) {
      const auto x = random_bitstring(rng, 6);
      q.emplace_back(x, g.eval(x));
    }
    EXPECT_FALSE(has_unate_violation(q, UnateViolationMode::exact_orientations));
    EXPECT_FALSE(has_unate_violation(q, UnateViolationMode::directional_edges));
  }
}

TEST(UnateViolation, DirectionalImpliesExact) {
  RngStream rng(3, "test.uv.random");
  int directional = 0, exact = 0;
  for (int trial = 0; trial < 400; ++trial) {
    LabeledQueries q;
    for (int k = 0; k < 10; ++k) q.emplace_back(random_bitstring(rng, 5), rng.below(2) == 1);
    const bool d = has_unate_violation(q, UnateViolationMode::directional_edges).has_value();
    const bool e = has_unate_violation(q, UnateViolationMode::exact_orientations).has_value();
    if (d) EXPECT_TRUE(e);
    directional += d;
    exact += e;
  }
  EXPECT_GT(directional, 0);
  EXPECT_GE(exact, directional);
}

TEST(UnateViolation, ExactMatchesBruteForce) {
  // Brute force: some orientation r on all n coordinates with no violating pair.
  RngStream rng(4, "test.uv.brute");
  for (int trial = 0; trial < 200; ++trial) {
    LabeledQueries q;
    for (int k = 0; k < 6; ++k) q.emplace_back(random_bitstring(rng, 4), rng.below(2) == 1);
    bool some_ok = false;
    for (std::uint64_t r = 0; r < 16 && !some_ok; ++r) {
      const auto rm = BitString::from_integer(4, r);
      bool ok = true;
      for (const auto& [x, fx] : q)
        for (const auto& [y, fy] : q)
          if (precedes(x ^ rm, y ^ rm) && fx && !fy) ok = false;
      some_ok = ok;
    }
    EXPECT_EQ(has_unate_violation(q, UnateViolationMode::exact_orientations).has_value(), !some_ok) << trial;
  }
}

// -- orientations -------------------------------------------------------------

TEST(Orientation, SmallCases) {
  const std::uint32_t n = 16;
  EXPECT_TRUE(check_orientation({BitString(n)}, BitString(n), n));
  const std::vector<BitString> far{BitString(n), BitString::ones(n)};
  EXPECT_FALSE(check_orientation(far, BitString(n), n));
  BitString half(n);
  for (std::uint32_t k = 0; k < n / 2; ++k) half.set(k);
  EXPECT_TRUE(check_orientation(far, half, n));
  // Hamming distance 8 = 2 log 16 is allowed.
  BitString near(n);
  for (std::uint32_t k = 0; k < 8; ++k) near.set(k);
  EXPECT_TRUE(check_orientation({BitString(n), near}, BitString(n), n));
  near.set(8);
  EXPECT_FALSE(check_orientation({BitString(n), near}, BitString(n), n));
}

TEST(Orientation, SearchOnSingletonAndRandomSets) {
  RngStream rng(5, "test.orient");
  const auto one = find_good_orientation({BitString::ones(16)}, 16, rng, 10);
  ASSERT_TRUE(one.r);
  EXPECT_EQ(one.tries, 1u);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BitString> q;
    for (int k = 0; k < 8; ++k) q.push_back(random_bitstring(rng, 64));
    const auto res = find_good_orientation(q, 64, rng, 200);
    ASSERT_TRUE(res.r);
    EXPECT_TRUE(check_orientation(q, *res.r, 64));
    EXPECT_GE(res.tries, 1u);
  }
}
