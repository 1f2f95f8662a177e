#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptlab/core/json_io.hpp"
#include "ptlab/families/mono.hpp"
#include "ptlab/families/truth_table.hpp"
#include "ptlab/families/unate.hpp"

namespace ptlab {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational reduced() const;
  std::string to_string() const;
  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

struct ViolationGraph {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (x, y) as table indices, x precedes y
};

// All violating pairs, or only hypercube edges when edges_only is set.
ViolationGraph violation_graph(const TruthTable& t, bool edges_only, std::uint32_t cap = 14);

// Maximum matching of the violating-pair graph over 2^n.
Rational exact_dist_mono(const TruthTable& t, std::uint32_t cap = 14);
std::uint64_t max_violation_matching(const TruthTable& t, std::uint32_t cap = 14);

// Minimum over orientations r of the monotonicity distance of x -> f(x xor r).
Rational exact_dist_unate(const TruthTable& t, std::uint32_t cap = 10);

struct DirectionalEdgeSets {
  std::vector<std::vector<std::uint64_t>> plus;   // lower endpoints: f(x)=0, f(x^(i))=1
  std::vector<std::vector<std::uint64_t>> minus;  // lower endpoints: f(x)=1, f(x^(i))=0
};

DirectionalEdgeSets directional_edges(const TruthTable& t);

// Greedy vertex-disjoint selection across directions, summed as min(|E_i^+|, |E_i^-|) over 2^n.
// A heuristic lower bound on the unateness distance.
Rational unate_dist_lower_bound(const TruthTable& t, std::uint32_t cap = 24);

struct FarnessEstimate {
  double estimate = 0;
  std::uint64_t samples = 0;
  double ci = 0;  // 95% half-width, normal approximation
  std::uint64_t seed = 0;
  bool exact = false;

  Json to_json() const;
};

FarnessEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed);

struct XPrimeWitness {
  BitString x, x_star;  // x precedes x_star, f(x) = 1, f(x_star) = 0
  std::uint64_t i = 0, j = 0;
  std::uint32_t k = 0;  // anti-dictator variable of h_{i,j}
};

// Membership of a middle-layer x in the set X' of a no-world mono instance.
// x_star = x^(k) must also lie in the middle layers.
std::optional<XPrimeWitness> xprime_membership(const MonoInstance& inst, const BitString& x);

enum class EstimateMode { monte_carlo, exhaustive };

// Probability that a uniform middle-layer x lies in X'. Exhaustive mode enumerates
// every middle-layer string (n <= 20); samples and seed are then ignored.
FarnessEstimate estimate_pr_xprime(const MonoInstance& inst, std::uint64_t samples, std::uint64_t seed,
                                   EstimateMode mode = EstimateMode::monte_carlo);

// Every X' witness over the middle layers (n <= 20). The edges are pairwise disjoint.
std::vector<XPrimeWitness> xprime_family(const MonoInstance& inst);

struct UnateFamilyStats {
  std::vector<std::uint32_t> coordinates;  // k in Mbar, 0-based
  std::vector<FarnessEstimate> plus;       // |X_k^+| / 2^n
  std::vector<FarnessEstimate> minus;      // |X_k^-| / 2^n
  double min_sum = 0;                      // sum_k min(plus_k, minus_k)
  double min_sum_ci = 0;
  std::uint64_t witness_failures = 0;      // members whose edge (z, z^(k)) was not bi-chromatic

  Json to_json() const;
};

// Sets X_k^+ / X_k^- of the de-oriented function. Exhaustive mode needs n <= 20.
UnateFamilyStats unate_no_family_stats(const UnateInstance& inst, std::uint64_t samples, std::uint64_t seed,
                                       EstimateMode mode = EstimateMode::monte_carlo);

}  // namespace ptlab
