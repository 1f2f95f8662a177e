#include <gtest/gtest.h>

#include <cmath>

#include "ptlab/core/error.hpp"
#include "ptlab/core/rng.hpp"
#include "ptlab/families/serialize.hpp"
#include "ptlab/families/truth_table.hpp"
#include "support/oracles.hpp"

using namespace ptlab;

namespace {

BitString ones_at(std::uint32_t n, std::initializer_list<std::uint32_t> one_based) {
  BitString x(n);
  for (auto k : one_based) x.set(k - 1);
  return x;
}

// n = 16, T_1 = {1..4}, T_2 = {5..8}, C_{1,1} = {9..12}, every other clause {13};
// h_{1,1} is the negative dictator on 14 in the no world.
MonoInstance pair_instance(World w) {
  std::vector<std::vector<std::uint32_t>> terms{{0, 1, 2, 3}, {4, 5, 6, 7}};
  std::vector<std::vector<std::uint32_t>> clauses{{8, 9, 10, 11}, {12}, {12}, {12}};
  const bool pos = w == World::yes;
  std::vector<Dictator> dicts{{13, pos}, {0, pos}, {0, pos}, {0, pos}};
  return MonoInstance::from_parts(16, w, terms, clauses, dicts);
}

}  // namespace

TEST(MonoFamily, ShapeAtSixteen) {
  const auto yes = MonoInstance::sample(16, World::yes, 7, Storage::eager);
  EXPECT_EQ(yes.num_terms(), 16u);
  for (std::uint64_t i = 0; i < 16; ++i) {
    EXPECT_EQ(yes.term(i).size(), 4u);
    for (std::uint64_t j = 0; j < 16; ++j) {
      EXPECT_EQ(yes.clause(i, j).size(), 4u);
      EXPECT_TRUE(yes.dictator(i, j).positive);
    }
  }
}

TEST(MonoFamily, WorldsShareTermsAndClauses) {
  const auto yes = MonoInstance::sample(16, World::yes, 7, Storage::eager);
  const auto no = MonoInstance::sample(16, World::no, 7, Storage::eager);
  for (std::uint64_t i = 0; i < 16; ++i) {
    EXPECT_EQ(yes.term(i), no.term(i));
    for (std::uint64_t j = 0; j < 16; ++j) {
      EXPECT_EQ(yes.clause(i, j), no.clause(i, j));
      EXPECT_FALSE(no.dictator(i, j).positive);
      EXPECT_EQ(yes.dictator(i, j).index, no.dictator(i, j).index);
    }
  }
}

TEST(MonoFamily, LazyMatchesExplicit) {
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (auto w : {World::yes, World::no}) {
      const auto e = MonoInstance::sample(16, w, seed, Storage::eager);
      const auto l = MonoInstance::sample(16, w, seed, Storage::lazy);
      for (std::uint64_t i = 0; i < 16; ++i) {
        ASSERT_EQ(e.term(i), l.term(i));
        for (std::uint64_t j = 0; j < 16; ++j) {
          ASSERT_EQ(e.clause(i, j), l.clause(i, j));
          ASSERT_EQ(e.dictator(i, j), l.dictator(i, j));
        }
      }
    }
}

TEST(MonoFamily, FirstTermVariableUniform) {
  const int seeds = 100000;
  std::vector<int> count(16, 0);
  for (int s = 0; s < seeds; ++s) ++count[MonoInstance::sample(16, World::yes, s, Storage::lazy).term(0)[0]];
  const double p = 1.0 / 16, sigma = std::sqrt(seeds * p * (1 - p));
  for (int k = 0; k < 16; ++k) EXPECT_LT(std::abs(count[k] - seeds * p), 5 * sigma) << k;
}

TEST(MonoFamily, Validation) {
  EXPECT_THROW(MonoInstance::sample(15, World::yes, 0, Storage::eager), InvalidArgument);
  EXPECT_THROW(MonoInstance::sample(4, World::yes, 0, Storage::eager), InvalidArgument);
  EXPECT_THROW(MonoInstance::sample(144, World::yes, 0, Storage::eager), ResourceLimit);
  EXPECT_NO_THROW(MonoInstance::sample(144, World::yes, 0, Storage::lazy));
}

TEST(MonoFamily, MultiplexerCorners) {
  const auto f = MonoInstance::sample(16, World::yes, 3, Storage::eager);
  EXPECT_EQ(f.multiplexer(BitString(16)), Gamma::zero());
  EXPECT_EQ(f.multiplexer(BitString::ones(16)), Gamma::one());
}

TEST(MonoFamily, HandTracedPair) {
  // As printed, the pinned example point also satisfies T_2, which routes to One.
  // Dropping coordinate 8 keeps T_2 unsatisfied so exactly T_1 and C_{1,1} fire.
  const auto f = pair_instance(World::no);
  const auto x = ones_at(16, {1, 2, 3, 4, 5, 6, 7, 13});
  EXPECT_EQ(f.multiplexer(ones_at(16, {1, 2, 3, 4, 5, 6, 7, 8, 13})), Gamma::one());
  EXPECT_EQ(f.multiplexer(x), Gamma::pair(0, 0));
  EXPECT_FALSE(x.get(13));
  EXPECT_TRUE(f.eval(x));
  EXPECT_FALSE(pair_instance(World::yes).eval(x));
}

TEST(MonoFamily, Truncation) {
  const auto f = MonoInstance::sample(16, World::no, 1, Storage::eager);
  EXPECT_TRUE(f.eval(BitString::ones(16)));
  EXPECT_FALSE(f.eval(BitString(16)));
}

TEST(MonoFamily, MatchesOracleEvaluator) {
  RngStream rng(5, "test.mono.eval");
  for (std::uint32_t n : {9u, 16u, 25u})
    for (auto w : {World::yes, World::no})
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto f = MonoInstance::sample(n, w, seed, Storage::lazy);
        for (int t = 0; t < 2000; ++t) {
          const auto x = random_bitstring(rng, n);
          ASSERT_EQ(f.eval(x), oracle::mono_eval(f, x)) << n << " " << x.to_hex();
        }
      }
}

TEST(MonoFamily, YesWorldHasNoViolatingEdges) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = MonoInstance::sample(9, World::yes, seed, Storage::eager);
    EXPECT_EQ(oracle::violating_edges(9, [&](const BitString& x) { return oracle::mono_eval(f, x); }), 0u);
    EXPECT_EQ(count_violating_edges(truth_table(f)), 0u);
  }
}

TEST(MonoFamily, UpwardFlipKeepsOne) {
  RngStream rng(6, "test.mono.up");
  const auto f = MonoInstance::sample(16, World::yes, 2, Storage::eager);
  for (int t = 0; t < 5000; ++t) {
    auto x = random_bitstring(rng, 16);
    if (!(f.multiplexer(x) == Gamma::one()) || f.weight_class(x) != WeightClass::middle) continue;
    const auto k = rng.below(16);
    x.set(k);
    if (f.weight_class(x) == WeightClass::middle) EXPECT_EQ(f.multiplexer(x), Gamma::one());
  }
}

TEST(BB15Family, YesWorldPoints) {
  const auto f = BB15Instance::sample(16, World::yes, 4);
  EXPECT_TRUE(f.eval(BitString::ones(16)));
  EXPECT_FALSE(f.eval(BitString(16)));
  // Middle-layer point satisfying only T_3.
  std::vector<std::vector<std::uint32_t>> terms{{0, 1}, {2, 3}, {4, 5, 6}};
  const auto g = BB15Instance::from_parts(16, World::yes, terms, IndexSet(16, {}));
  EXPECT_TRUE(g.eval(ones_at(16, {5, 6, 7, 9, 11})));
  EXPECT_FALSE(g.eval(ones_at(16, {5, 6, 9, 11, 13})));
}

TEST(BB15Family, NoWorldFlipsS) {
  std::vector<std::vector<std::uint32_t>> terms{{0, 1, 2}, {3, 4, 5}};
  const auto g = BB15Instance::from_parts(16, World::no, terms, IndexSet(16, {1}));
  RngStream rng(7, "test.bb15");
  for (int t = 0; t < 2000; ++t) {
    const auto x = random_bitstring(rng, 16);
    BitString y = x;
    y.flip(1);
    const bool dnf = (y.get(0) && y.get(1) && y.get(2)) || (y.get(3) && y.get(4) && y.get(5));
    if (g.band().classify(x.weight()) == WeightClass::middle) EXPECT_EQ(g.eval(x), dnf);
  }
}

TEST(BB15Family, MatchesOracleEvaluator) {
  RngStream rng(8, "test.bb15.eval");
  for (std::uint32_t n : {16u, 100u})
    for (auto w : {World::yes, World::no}) {
      const auto f = BB15Instance::sample(n, w, 3);
      for (int t = 0; t < 3000; ++t) {
        const auto x = random_bitstring(rng, n);
        ASSERT_EQ(f.eval(x), oracle::bb15_eval(f, x));
      }
    }
}

TEST(UnateFamily, TermCountAndPolarities) {
  EXPECT_EQ(UnateInstance::num_terms_for(16), 3u);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = UnateInstance::sample(16, World::yes, seed);
    EXPECT_EQ(f.num_terms(), 3u);
    for (std::uint64_t i = 0; i < f.num_terms(); ++i) {
      EXPECT_TRUE(f.dictators()[i].positive);
      EXPECT_FALSE(f.m().contains(f.dictators()[i].index));
      for (auto k : f.terms()[i]) EXPECT_TRUE(f.m().contains(k));
    }
  }
}

TEST(UnateFamily, FirstTermSizeMean) {
  const int seeds = 10000;
  double sum = 0, sq = 0;
  for (int s = 0; s < seeds; ++s) {
    const double v = UnateInstance::sample(100, World::yes, s).terms()[0].size();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / seeds;
  // Binomial(n/2, 1/sqrt(n)).
  const double sd = std::sqrt(50 * 0.1 * 0.9 / seeds);
  EXPECT_LT(std::abs(mean - 5.0), 3 * sd);
  (void)sq;
}

TEST(UnateFamily, TruncationOnDeorientedWeight) {
  const auto f = UnateInstance::sample(100, World::no, 2);
  const BitString orient = f.orientation();
  EXPECT_TRUE(f.eval(f.m_mask() ^ orient));
  EXPECT_FALSE(f.eval(orient));
}

TEST(UnateFamily, HandTracedSingleTerm) {
  std::vector<std::uint32_t> mm{0, 1, 2, 3, 4, 5, 6, 7};
  const auto f = UnateInstance::from_parts(16, World::yes, IndexSet(16, mm), {{0, 1}}, {{8, true}},
                                           std::vector<bool>(8, false), std::vector<bool>(8, false));
  EXPECT_EQ(f.table().multiplexer(ones_at(16, {1, 2, 3})), Gamma::index(0));
  EXPECT_TRUE(f.eval(ones_at(16, {1, 2, 9})));
  EXPECT_FALSE(f.eval(ones_at(16, {1, 2, 10})));
  EXPECT_FALSE(f.eval(ones_at(16, {1, 3, 9})));
  EXPECT_THROW(UnateInstance::from_parts(16, World::yes, IndexSet(16, mm), {{0, 1}}, {{8, false}},
                                         std::vector<bool>(8, false), std::vector<bool>(8, false)),
               InvalidArgument);
}

TEST(UnateFamily, MatchesOracleEvaluator) {
  RngStream rng(9, "test.unate.eval");
  for (std::uint32_t n : {16u, 36u, 100u})
    for (auto w : {World::yes, World::no})
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto f = UnateInstance::sample(n, w, seed);
        for (int t = 0; t < 2000; ++t) {
          const auto x = random_bitstring(rng, n);
          ASSERT_EQ(f.eval(x), oracle::unate_eval(f, x));
        }
      }
}

TEST(UnateFamily, YesWorldDeorientedIsMonotone) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto f = UnateInstance::sample(16, World::yes, seed);
    EXPECT_EQ(oracle::violating_edges(16, [&](const BitString& z) { return f.eval_deoriented(z); }), 0u);
  }
}

TEST(OneLevelFamily, Points) {
  const auto f = OneLevelInstance::sample(16, World::no, 1);
  EXPECT_FALSE(f.eval(BitString(16)));
  EXPECT_TRUE(f.eval(BitString::ones(16)));
  const auto g = OneLevelInstance::from_parts(16, World::no, {{0, 1}, {2, 3}}, {{5, false}, {6, false}});
  // Exactly T_2 satisfied; h_2 is the negative dictator on coordinate 7 (1-based), set to 1.
  EXPECT_FALSE(g.eval(ones_at(16, {3, 4, 7, 9, 10})));
  EXPECT_TRUE(g.eval(ones_at(16, {3, 4, 9, 10, 11})));
}

TEST(OneLevelFamily, MatchesOracleEvaluator) {
  RngStream rng(10, "test.onelevel.eval");
  for (auto w : {World::yes, World::no}) {
    const auto f = OneLevelInstance::sample(16, w, 4);
    for (int t = 0; t < 3000; ++t) {
      const auto x = random_bitstring(rng, 16);
      ASSERT_EQ(f.eval(x), oracle::onelevel_eval(f, x));
    }
  }
}

TEST(FiFamily, QuadrantEquations) {
  const FiInstance f(2, 0);
  const auto t = truth_table(f);
  ASSERT_EQ(t.size(), 16u);
  for (std::uint64_t v = 0; v < 16; ++v) {
    const bool a = v & 1, b = v & 2, xi = v & 4;
    bool want = false;
    if (a && b) want = true;
    if (!a && b) want = !xi;
    if (a && !b) want = xi;
    EXPECT_EQ(t.get(v), want) << v;
  }
  // Pinned points.
  EXPECT_TRUE(f.eval(BitString::from_bits("1100")));
  EXPECT_TRUE(f.eval(BitString::from_bits("0100")));
  EXPECT_FALSE(f.eval(BitString::from_bits("1000")));
}

TEST(TruthTable, MatchesEval) {
  const auto f = MonoInstance::sample(16, World::no, 5, Storage::eager);
  const auto t = truth_table(f);
  RngStream rng(11, "test.table");
  for (int k = 0; k < 10000; ++k) {
    const auto x = random_bitstring(rng, 16);
    ASSERT_EQ(t.get(x.to_integer()), f.eval(x));
  }
  EXPECT_THROW(truth_table(MonoInstance::sample(25, World::no, 0, Storage::lazy)), ResourceLimit);
}

TEST(TruthTable, ViolatingEdgesMatchOracle) {
  const auto f = MonoInstance::sample(9, World::no, 3, Storage::eager);
  EXPECT_EQ(count_violating_edges(truth_table(f)), oracle::violating_edges(9, [&](const BitString& x) {
              return f.eval(x);
            }));
}

TEST(Serialize, RoundTripAllFamilies) {
  RngStream rng(12, "test.serialize");
  for (const char* fam : {"mono", "bb15", "unate", "onelevel", "fi"}) {
    const auto inst = sample_instance(fam, 16, World::no, 3);
    const Json j = instance_to_json(inst);
    const auto back = instance_from_json(Json::parse(j.dump()));
    EXPECT_EQ(instance_to_json(back), j) << fam;
    EXPECT_EQ(family_name(back), fam);
    const auto& f = as_function(inst);
    const auto& g = as_function(back);
    for (int t = 0; t < 500; ++t) {
      const auto x = random_bitstring(rng, f.dimension());
      ASSERT_EQ(f.eval(x), g.eval(x)) << fam;
    }
  }
}

TEST(Serialize, LazyRoundTripKeepsSeed) {
  const AnyInstance inst = MonoInstance::sample(100, World::no, 9, Storage::lazy);
  const auto back = instance_from_json(instance_to_json(inst));
  const auto& m = std::get<MonoInstance>(back);
  EXPECT_EQ(m.storage(), Storage::lazy);
  EXPECT_EQ(m.seed(), std::optional<std::uint64_t>(9));
  EXPECT_EQ(m.dictator(1000, 3), std::get<MonoInstance>(inst).dictator(1000, 3));
}

TEST(Serialize, RejectsMalformed) {
  EXPECT_THROW(instance_from_json(Json::parse("{\"family\":\"nope\"}")), InvalidArgument);
  EXPECT_THROW(instance_from_json(Json::parse("{}")), InvalidArgument);
  EXPECT_THROW(sample_instance("mono", 15, World::yes, 0), InvalidArgument);
}
