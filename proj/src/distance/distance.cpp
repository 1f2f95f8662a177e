#include "ptlab/distance/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptlab/core/error.hpp"
#include "ptlab/core/rng.hpp"

namespace ptlab {

Rational Rational::reduced() const {
  const auto g = std::gcd(num, den);
  return g ? Rational{num / g, den / g} : *this;
}

std::string Rational::to_string() const {
  const Rational r = reduced();
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

namespace {

void check_cap(const TruthTable& t, std::uint32_t cap) {
  if (t.n() > cap) throw ResourceLimit("n = " + std::to_string(t.n()) + " exceeds the cap of " + std::to_string(cap));
}

// Bipartite graph in CSR form: left = f^{-1}(1), right = f^{-1}(0).
struct Bipartite {
  std::vector<std::uint32_t> offsets;  // size left + 1
  std::vector<std::uint32_t> adj;
  std::uint32_t right = 0;
};

Bipartite build_violation_bipartite(const TruthTable& t) {
  const std::uint64_t full = t.size() - 1;
  std::vector<std::uint32_t> right_id(t.size(), 0);
  Bipartite g;
  for (std::uint64_t y = 0; y < t.size(); ++y)
    if (!t.get(y)) right_id[y] = g.right++;
  g.offsets.push_back(0);
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    if (!t.get(x)) continue;
    const std::uint64_t comp = full & ~x;
    for (std::uint64_t sub = comp; sub; sub = (sub - 1) & comp) {
      const std::uint64_t y = x | sub;
      if (!t.get(y)) g.adj.push_back(right_id[y]);
    }
    g.offsets.push_back(static_cast<std::uint32_t>(g.adj.size()));
  }
  return g;
}

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const Bipartite& g)
      : g_(g), left_(static_cast<std::uint32_t>(g.offsets.size() - 1)), match_l_(left_, kFree),
        match_r_(g.right, kFree), dist_(left_), it_(left_) {}

  std::uint64_t run() {
    std::uint64_t size = 0;
    while (bfs())
      for (std::uint32_t u = 0; u < left_; ++u)
        if (match_l_[u] == kFree && dfs(u)) ++size;
    return size;
  }

 private:
  static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

  bool bfs() {
    std::vector<std::uint32_t> queue;
    queue.reserve(left_);
    for (std::uint32_t u = 0; u < left_; ++u) {
      if (match_l_[u] == kFree) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kFree;
      }
    }
    bool found = false;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const auto u = queue[h];
      for (auto e = g_.offsets[u]; e < g_.offsets[u + 1]; ++e) {
        const auto w = match_r_[g_.adj[e]];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kFree) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (std::uint32_t u = 0; u < left_; ++u) it_[u] = g_.offsets[u];
    return found;
  }

  // Iterative augmenting-path search along the BFS layers.
  bool dfs(std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const auto u = stack.back();
      bool advanced = false;
      for (auto& e = it_[u]; e < g_.offsets[u + 1]; ++e) {
        const auto v = g_.adj[e];
        const auto w = match_r_[v];
        if (w == kFree) {
          // Augment along the stack.
          for (std::size_t k = stack.size(); k-- > 0;) {
            const auto a = stack[k];
            const auto b = g_.adj[it_[a]];
            match_l_[a] = b;
            match_r_[b] = a;
          }
          return true;
        }
        if (dist_[w] == dist_[u] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist_[u] = kFree;
        stack.pop_back();
        if (!stack.empty()) ++it_[stack.back()];
      }
    }
    return false;
  }

  const Bipartite& g_;
  std::uint32_t left_;
  std::vector<std::uint32_t> match_l_, match_r_, dist_, it_;
};

}  // namespace

ViolationGraph violation_graph(const TruthTable& t, bool edges_only, std::uint32_t cap) {
  check_cap(t, cap);
  ViolationGraph g;
  g.n = t.n();
  const std::uint64_t full = t.size() - 1;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    if (!t.get(x)) continue;
    if (edges_only) {
      for (std::uint32_t i = 0; i < t.n(); ++i) {
        const std::uint64_t y = x | (std::uint64_t{1} << i);
        if (y != x && !t.get(y)) g.pairs.emplace_back(x, y);
      }
      continue;
    }
    const std::uint64_t comp = full & ~x;
    for (std::uint64_t sub = comp; sub; sub = (sub - 1) & comp)
      if (!t.get(x | sub)) g.pairs.emplace_back(x, x | sub);
  }
  return g;
}

std::uint64_t max_violation_matching(const TruthTable& t, std::uint32_t cap) {
  check_cap(t, cap);
  if (count_violating_edges(t) == 0) return 0;
  const Bipartite g = build_violation_bipartite(t);
  return HopcroftKarp(g).run();
}

Rational exact_dist_mono(const TruthTable& t, std::uint32_t cap) {
  return Rational{max_violation_matching(t, cap), t.size()};
}

Rational exact_dist_unate(const TruthTable& t, std::uint32_t cap) {
  check_cap(t, cap);
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t r = 0; r < t.size() && best > 0; ++r)
    best = std::min(best, max_violation_matching(t.reoriented(r), t.n()));
  return Rational{best, t.size()};
}

DirectionalEdgeSets directional_edges(const TruthTable& t) {
  DirectionalEdgeSets d;
  d.plus.resize(t.n());
  d.minus.resize(t.n());
  for (std::uint32_t i = 0; i < t.n(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t x = 0; x < t.size(); ++x) {
      if (x & bit) continue;
      const bool lo = t.get(x), hi = t.get(x | bit);
      if (!lo && hi) d.plus[i].push_back(x);
      if (lo && !hi) d.minus[i].push_back(x);
    }
  }
  return d;
}

Rational unate_dist_lower_bound(const TruthTable& t, std::uint32_t cap) {
  check_cap(t, cap);
  const DirectionalEdgeSets d = directional_edges(t);
  std::vector<std::uint32_t> order(t.n());
  std::iota(order.begin(), order.end(), 0u);
  auto weight = [&](std::uint32_t i) { return std::min(d.plus[i].size(), d.minus[i].size()); };
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight(a) > weight(b); });

  std::vector<bool> used(t.size(), false);
  std::uint64_t total = 0;
  for (auto i : order) {
    if (weight(i) == 0) break;
    const std::uint64_t bit = std::uint64_t{1} << i;
    auto available = [&](const std::vector<std::uint64_t>& edges) {
      std::vector<std::uint64_t> out;
      for (auto x : edges)
        if (!used[x] && !used[x | bit]) out.push_back(x);
      return out;
    };
    const auto p = available(d.plus[i]), m = available(d.minus[i]);
    const std::size_t k = std::min(p.size(), m.size());
    for (std::size_t e = 0; e < k; ++e) {
      used[p[e]] = used[p[e] | bit] = true;
      used[m[e]] = used[m[e] | bit] = true;
    }
    total += k;
  }
  return Rational{total, t.size()};
}

Json FarnessEstimate::to_json() const {
  return Json{{"estimate", estimate}, {"samples", samples}, {"ci", ci}, {"seed", seed}, {"exact", exact}};
}

FarnessEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidArgument("samples must be positive");
  FarnessEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  e.ci = 1.96 * std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
  return e;
}

std::optional<XPrimeWitness> xprime_membership(const MonoInstance& inst, const BitString& x) {
  if (x.size() != inst.n()) throw InvalidArgument("dimension mismatch");
  if (inst.world() != World::no) throw InvalidArgument("X' is defined for no-world instances");
  if (inst.weight_class(x) != WeightClass::middle) return std::nullopt;
  const Gamma g = inst.multiplexer(x);
  if (g.kind != Gamma::Kind::pair) return std::nullopt;
  const Dictator h = inst.dictator(g.i, g.j);
  if (h.positive || x.get(h.index)) return std::nullopt;  // f(x) = 1 needs x_k = 0
  // E_1: k is not a variable of C_{i,j}.
  const auto clause = inst.clause(g.i, g.j);
  if (std::find(clause.begin(), clause.end(), h.index) != clause.end()) return std::nullopt;
  BitString x_star = x;
  x_star.set(h.index);
  if (inst.weight_class(x_star) != WeightClass::middle) return std::nullopt;
  // E_2: T_i stays the only satisfied term.
  const auto terms = inst.satisfied_terms(x_star, 2);
  if (terms.size() != 1) return std::nullopt;
  return XPrimeWitness{x, x_star, g.i, g.j, h.index};
}

namespace {

template <class Visit>
void for_each_middle(std::uint32_t n, const Band& band, Visit&& visit) {
  if (n > 20) throw ResourceLimit("exhaustive enumeration supports n <= 20");
  BitString x(n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (band.classify(static_cast<std::size_t>(__builtin_popcountll(v))) != WeightClass::middle) continue;
    for (std::uint32_t k = 0; k < n; ++k) x.set(k, (v >> k) & 1);
    visit(x);
  }
}

}  // namespace

FarnessEstimate estimate_pr_xprime(const MonoInstance& inst, std::uint64_t samples, std::uint64_t seed,
                                   EstimateMode mode) {
  if (inst.world() != World::no) throw InvalidArgument("X' is defined for no-world instances");
  if (mode == EstimateMode::exhaustive) {
    std::uint64_t hits = 0, total = 0;
    for_each_middle(inst.n(), inst.band(), [&](const BitString& x) {
      ++total;
      hits += xprime_membership(inst, x).has_value();
    });
    FarnessEstimate e = bernoulli_estimate(hits, total, seed);
    e.ci = 0;
    e.exact = true;
    return e;
  }
  if (samples == 0) throw InvalidArgument("samples must be positive");
  RngStream rng(seed, "distance.xprime");
  std::uint64_t hits = 0;
  for (std::uint64_t m = 0; m < samples;) {
    const BitString x = random_bitstring(rng, inst.n());
    if (inst.weight_class(x) != WeightClass::middle) continue;
    ++m;
    hits += xprime_membership(inst, x).has_value();
  }
  return bernoulli_estimate(hits, samples, seed);
}

std::vector<XPrimeWitness> xprime_family(const MonoInstance& inst) {
  std::vector<XPrimeWitness> out;
  for_each_middle(inst.n(), inst.band(), [&](const BitString& x) {
    if (auto w = xprime_membership(inst, x)) out.push_back(std::move(*w));
  });
  return out;
}

Json UnateFamilyStats::to_json() const {
  Json rows = Json::array();
  for (std::size_t c = 0; c < coordinates.size(); ++c)
    rows.push_back(Json{{"k", coordinates[c] + 1}, {"plus", plus[c].to_json()}, {"minus", minus[c].to_json()}});
  return Json{{"per_k", rows}, {"min_sum", min_sum}, {"min_sum_ci", min_sum_ci}, {"witness_failures", witness_failures}};
}

UnateFamilyStats unate_no_family_stats(const UnateInstance& inst, std::uint64_t samples, std::uint64_t seed,
                                       EstimateMode mode) {
  const std::uint32_t n = inst.n();
  UnateFamilyStats st;
  st.coordinates = inst.m_complement().members();
  std::vector<std::int64_t> slot(n, -1);
  for (std::size_t c = 0; c < st.coordinates.size(); ++c) slot[st.coordinates[c]] = static_cast<std::int64_t>(c);
  std::vector<std::uint64_t> plus(st.coordinates.size(), 0), minus(st.coordinates.size(), 0);

  auto visit = [&](const BitString& z) {
    if (inst.band_class_deoriented(z) != WeightClass::middle) return;
    const Gamma g = inst.table().multiplexer(z);
    if (g.kind != Gamma::Kind::index) return;
    const std::uint32_t k = inst.dictators()[g.i].index;
    const bool fz = inst.eval_deoriented(z);
    BitString zs = z;
    zs.flip(k);
    if (inst.eval_deoriented(zs) == fz) ++st.witness_failures;
    if (fz) return;
    (z.get(k) ? minus : plus)[slot[k]]++;
  };

  std::uint64_t total = samples;
  bool exact = false;
  if (mode == EstimateMode::exhaustive) {
    if (n > 20) throw ResourceLimit("exhaustive enumeration supports n <= 20");
    total = std::uint64_t{1} << n;
    exact = true;
    BitString z(n);
    for (std::uint64_t v = 0; v < total; ++v) {
      for (std::uint32_t k = 0; k < n; ++k) z.set(k, (v >> k) & 1);
      visit(z);
    }
  } else {
    if (samples == 0) throw InvalidArgument("samples must be positive");
    RngStream rng(seed, "distance.unate_family");
    for (std::uint64_t m = 0; m < samples; ++m) visit(random_bitstring(rng, n));
  }

  for (std::size_t c = 0; c < st.coordinates.size(); ++c) {
    FarnessEstimate p = bernoulli_estimate(plus[c], total, seed), q = bernoulli_estimate(minus[c], total, seed);
    if (exact) {
      p.ci = q.ci = 0;
      p.exact = q.exact = true;
    }
    const FarnessEstimate& lo = p.estimate <= q.estimate ? p : q;
    st.min_sum += lo.estimate;
    st.min_sum_ci += lo.ci;
    st.plus.push_back(p);
    st.minus.push_back(q);
  }
  return st;
}

}  // namespace ptlab
