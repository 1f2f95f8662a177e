#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ptlab/core/json_io.hpp"
#include "ptlab/testers/oracle.hpp"

namespace ptlab {

struct TesterConfig {
  std::uint64_t q = 100000;
  double eps = 0.1;
  std::uint64_t seed = 0;

  // Stage overrides; 0 selects the default expression at the given n.
  std::uint64_t stage1_rounds = 0;   // n^{1/4} (bb15) or n^{1/3} (two-level)
  std::uint64_t outer_repeats = 0;   // two-level Stages 2-4: n^{1/6}
  std::uint64_t stage3_rounds = 0;   // two-level: n^{1/6}
  std::uint64_t stage4_parts = 0;    // two-level: n^{1/6}
  std::uint64_t c0_size = 0;         // two-level: n^{5/6}
  std::uint64_t votes = 3;           // two-level Stage 4 re-runs
  std::uint64_t seed_draw_cap = 200;  // draws while looking for a middle-layer x with g(x) = 1

  void validate() const;
  Json to_json() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static TesterConfig from_json(const Json& j);
};

struct ViolationWitness {
  enum class Kind { mono_pair, unate_per_direction };
  Kind kind = Kind::mono_pair;
  // mono_pair: x precedes y, f(x) = 1, f(y) = 0.
  BitString x, y;
  // unate_per_direction: lower endpoints (coordinate i is 0) of a monotone and an
  // anti-monotone bi-chromatic edge in direction i.
  std::uint32_t direction = 0;
  BitString mono_edge, anti_edge;

  Json to_json() const;
};

// True when the witness endpoints re-evaluate to the claimed values.
bool verify_witness(const ViolationWitness& w, const BooleanFunction& f);

struct Verdict {
  enum class Decision { accept, reject };
  Decision decision = Decision::accept;
  std::optional<ViolationWitness> witness;
  std::uint64_t queries_used = 0;
  std::map<std::string, std::uint64_t> stage_queries;
  std::string note;  // why an attack stopped early
  std::uint64_t seed = 0;

  bool rejected() const { return decision == Decision::reject; }
  Json to_json() const;
};

}  // namespace ptlab
