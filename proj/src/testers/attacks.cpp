#include "ptlab/testers/attacks.hpp"

#include <cmath>

#include "ptlab/core/error.hpp"
#include "ptlab/core/index_set.hpp"
#include "ptlab/core/math.hpp"
#include "ptlab/core/rng.hpp"

namespace ptlab {

namespace {

struct ViolationFound {};
struct StageEmpty {};

// Wraps the oracle for one attack run: charges queries to the current stage and
// stops the run as soon as two logged points form a violating pair.
class AttackRun {
 public:
  AttackRun(CountingOracle& o, Verdict& v) : o_(o), v_(v), start_(o.used()) {}

  void stage(const char* name) { stage_ = name; }

  bool ask(const BitString& x) {
    const auto before = o_.used();
    const bool val = o_.query(x);
    if (o_.used() == before) return val;
    ++v_.stage_queries[stage_];
    const auto& log = o_.log();
    for (std::size_t k = start_; k + 1 < log.size(); ++k) {
      const auto& [z, zv] = log[k];
      if (zv == val) continue;
      const BitString& lo = val ? x : z;
      const BitString& hi = val ? z : x;
      if (precedes(lo, hi)) {
        v_.witness = ViolationWitness{ViolationWitness::Kind::mono_pair, lo, hi, 0, {}, {}};
        throw ViolationFound{};
      }
    }
    return val;
  }

 private:
  CountingOracle& o_;
  Verdict& v_;
  std::uint64_t start_;
  std::string stage_ = "seed";
};

std::uint64_t root_ceil(std::uint32_t n, double p, std::uint64_t override_value) {
  if (override_value) return override_value;
  return static_cast<std::uint64_t>(std::ceil(std::pow(double(n), p) - 1e-9));
}

std::vector<std::vector<std::uint32_t>> chunk(std::vector<std::uint32_t> v, std::size_t size) {
  std::vector<std::vector<std::uint32_t>> out;
  if (size == 0) size = 1;
  for (std::size_t k = 0; k < v.size(); k += size)
    out.emplace_back(v.begin() + k, v.begin() + std::min(v.size(), k + size));
  return out;
}

std::vector<std::uint32_t> join(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::uint32_t> minus(const std::vector<std::uint32_t>& a, const BitString& drop) {
  std::vector<std::uint32_t> out;
  for (auto k : a)
    if (!drop.get(k)) out.push_back(k);
  return out;
}

// Rejection sampling of a uniform middle-layer x with g(x) = 1.
std::optional<BitString> find_seed(AttackRun& run, std::uint32_t n, const TesterConfig& cfg, const char* tag) {
  run.stage("seed");
  RngStream rng(cfg.seed, tag);
  const Band band{n / 2.0, std::sqrt(double(n))};
  for (std::uint64_t d = 0; d < cfg.seed_draw_cap; ++d) {
    BitString x = random_bitstring(rng, n);
    if (band.classify(x.weight()) != WeightClass::middle) continue;
    if (run.ask(x)) return x;
  }
  return std::nullopt;
}

// Repeatedly flips random size-s subsets of pool in base; coordinates of subsets
// whose flip returned keep_value are collected.
BitString shrink_rounds(AttackRun& run, const BitString& base, const std::vector<std::uint32_t>& pool,
                        std::size_t s, std::uint64_t rounds, bool keep_value, RngStream& rng) {
  BitString removed(base.size());
  if (pool.empty()) return removed;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    const auto sub = sample_without_replacement(rng, pool, std::min(s, pool.size()));
    if (run.ask(flip_set(base, sub)) == keep_value)
      for (auto k : sub) removed.set(k);
  }
  return removed;
}

void check_dimension(const CountingOracle& o, std::uint32_t n) {
  if (!is_perfect_square(n)) throw InvalidArgument("n must be a perfect square");
  if (o.dimension() != n) throw InvalidArgument("oracle dimension differs from n");
}

void finish(Verdict& v, const CountingOracle& o, std::uint64_t start) {
  v.queries_used = o.used() - start;
  if (v.witness) {
    // Re-verification reads the cache only.
    const auto fx = o.peek(v.witness->x), fy = o.peek(v.witness->y);
    if (fx && fy && *fx && !*fy && precedes(v.witness->x, v.witness->y)) {
      v.decision = Verdict::Decision::reject;
      v.note.clear();
      return;
    }
    v.witness.reset();
  }
  v.decision = Verdict::Decision::accept;
}

}  // namespace

Verdict edge_tester(CountingOracle& o, const TesterConfig& cfg) {
  cfg.validate();
  Verdict v;
  v.seed = cfg.seed;
  const auto start = o.used();
  const std::size_t n = o.dimension();
  RngStream rng(cfg.seed, "edge");
  try {
    for (std::uint64_t round = 0; round < cfg.q / 2; ++round) {
      BitString lo = random_bitstring(rng, n);
      const auto i = rng.below(n);
      lo.set(i, false);
      BitString hi = lo;
      hi.set(i);
      const bool fl = o.query(lo), fh = o.query(hi);
      v.stage_queries["edges"] = o.used() - start;
      if (fl && !fh) {
        v.witness = ViolationWitness{ViolationWitness::Kind::mono_pair, lo, hi, 0, {}, {}};
        break;
      }
    }
  } catch (const BudgetExhausted&) {
    v.note = "budget exhausted";
  }
  finish(v, o, start);
  return v;
}

Verdict edge_tester(const BooleanFunction& f, const TesterConfig& cfg) {
  CountingOracle o(f, cfg.q);
  return edge_tester(o, cfg);
}

Verdict bb15_attack(CountingOracle& o, std::uint32_t n, const TesterConfig& cfg) {
  cfg.validate();
  check_dimension(o, n);
  Verdict v;
  v.seed = cfg.seed;
  const auto start = o.used();
  const std::size_t s = isqrt(n);
  AttackRun run(o, v);
  try {
    const auto x = find_seed(run, n, cfg, "bb15.seed");
    if (!x) {
      v.note = "no seed string found";
    } else {
      const auto a1 = x->ones_indices(), a0 = x->zeros_indices();

      run.stage("stage1");
      RngStream r1(cfg.seed, "bb15.stage1");
      const BitString removed = shrink_rounds(run, *x, a1, s, root_ceil(n, 0.25, cfg.stage1_rounds), true, r1);
      const auto c = removed.ones_indices();
      if (c.empty()) {
        v.note = "stage 1 removed nothing";
      } else {
        RngStream r2(cfg.seed, "bb15.stage2");
        auto perm = a0;
        shuffle(r2, perm);
        std::uint64_t block = 0;
        for (const auto& part : chunk(perm, c.size())) {
          run.stage("stage2");
          const BitString y = flip_set(*x, join(part, c));
          if (run.ask(y)) {
            ++block;
            continue;
          }
          run.stage("stage3");
          RngStream r3(cfg.seed, "bb15.stage3", {block++});
          auto pieces = part;
          shuffle(r3, pieces);
          for (const auto& delta : chunk(pieces, s)) run.ask(flip_set(y, delta));
        }
        v.note = "no violation found";
      }
    }
  } catch (const BudgetExhausted&) {
    v.note = "budget exhausted";
  } catch (const ViolationFound&) {
  }
  finish(v, o, start);
  return v;
}

Verdict two_level_attack(CountingOracle& o, std::uint32_t n, const TesterConfig& cfg) {
  cfg.validate();
  check_dimension(o, n);
  Verdict v;
  v.seed = cfg.seed;
  const auto start = o.used();
  const std::size_t s = isqrt(n);
  AttackRun run(o, v);
  try {
    const auto x = find_seed(run, n, cfg, "two_level.seed");
    if (!x) {
      v.note = "no seed string found";
    } else {
      const auto a1 = x->ones_indices(), a0 = x->zeros_indices();
      run.stage("stage1");
      RngStream r1(cfg.seed, "two_level.stage1");
      const auto c1 = shrink_rounds(run, *x, a1, s, root_ceil(n, 1.0 / 3.0, cfg.stage1_rounds), true, r1)
                          .ones_indices();

      const auto repeats = root_ceil(n, 1.0 / 6.0, cfg.outer_repeats);
      const auto s3_rounds = root_ceil(n, 1.0 / 6.0, cfg.stage3_rounds);
      const auto parts = root_ceil(n, 1.0 / 6.0, cfg.stage4_parts);
      // C_0 is flipped up while C_1 is flipped down, so by default |C_0| is capped at |C_1| to keep y
      // inside the middle layers.
      std::size_t c0_size = cfg.c0_size;
      if (!c0_size)
        c0_size = std::min<std::size_t>(c1.size(), std::llround(std::pow(double(n), 5.0 / 6.0)));
      c0_size = std::min(c0_size, a0.size());
      if (c0_size == 0) throw StageEmpty{};

      for (std::uint64_t rep = 0; rep < repeats; ++rep) {
        run.stage("stage2");
        RngStream r2(cfg.seed, "two_level.stage2", {rep});
        const auto c0 = sample_without_replacement(r2, a0, c0_size);
        const BitString y = flip_set(*x, join(c1, c0));
        if (run.ask(y)) continue;

        const auto rest = minus(a0, IndexSet(n, c0).mask());
        auto stage3 = [&](std::initializer_list<std::uint64_t> ctr) {
          run.stage("stage3");
          RngStream r3(cfg.seed, "two_level.stage3", ctr);
          return shrink_rounds(run, y, rest, s, s3_rounds, false, r3).ones_indices();
        };
        const auto c = stage3({rep, 0, 0});

        RngStream r4(cfg.seed, "two_level.stage4", {rep});
        auto perm = c0;
        shuffle(r4, perm);
        const std::size_t part_size = (perm.size() + parts - 1) / parts;
        std::uint64_t idx = 0;
        for (const auto& part : chunk(perm, part_size)) {
          ++idx;
          run.stage("stage4");
          if (!run.ask(flip_set(y, join(part, c)))) continue;
          std::uint64_t ones = 0;
          for (std::uint64_t k = 0; k < cfg.votes; ++k) {
            const auto fresh = stage3({rep, idx, k + 1});
            run.stage("stage4");
            ones += run.ask(flip_set(y, join(part, fresh)));
          }
          if (2 * ones <= cfg.votes) continue;
          run.stage("stage5");
          RngStream r5(cfg.seed, "two_level.stage5", {rep, idx});
          auto pieces = part;
          shuffle(r5, pieces);
          for (const auto& delta : chunk(pieces, s)) run.ask(flip_set(y, delta));
        }
      }
      v.note = "no violation found";
    }
  } catch (const BudgetExhausted&) {
    v.note = "budget exhausted";
  } catch (const ViolationFound&) {
  } catch (const StageEmpty&) {
    v.note = "stage 1 removed nothing";
  }
  finish(v, o, start);
  return v;
}

Verdict bb15_attack(const BooleanFunction& f, std::uint32_t n, const TesterConfig& cfg) {
  CountingOracle o(f, cfg.q);
  return bb15_attack(o, n, cfg);
}

Verdict two_level_attack(const BooleanFunction& f, std::uint32_t n, const TesterConfig& cfg) {
  CountingOracle o(f, cfg.q);
  return two_level_attack(o, n, cfg);
}

}  // namespace ptlab
