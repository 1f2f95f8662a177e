#pragma once

#include <optional>
#include <vector>

#include "ptlab/core/rng.hpp"
#include "ptlab/testers/verdict.hpp"

namespace ptlab {

using LabeledQueries = std::vector<std::pair<BitString, bool>>;

enum class UnateViolationMode { exact_orientations, directional_edges };

struct UnateViolation {
  std::optional<ViolationWitness> directional;  // set by directional mode
  std::uint64_t orientations_checked = 0;        // set by exact mode
};

// exact_orientations: every orientation r over the coordinates where Q varies
// admits a violating pair (resource-limit above max_coordinates).
// directional_edges: some direction carries both a monotone and an anti-monotone
// bi-chromatic edge within Q.
std::optional<UnateViolation> has_unate_violation(const LabeledQueries& q, UnateViolationMode mode,
                                                  std::size_t max_coordinates = 20);

// Every pair comparable after xor with r lies within Hamming distance 2 log2 n.
bool check_orientation(const std::vector<BitString>& q, const BitString& r, std::uint32_t n);

struct OrientationSearch {
  std::optional<BitString> r;
  std::uint64_t tries = 0;
};

OrientationSearch find_good_orientation(const std::vector<BitString>& q, std::uint32_t n, RngStream& rng,
                                        std::uint64_t max_tries);

}  // namespace ptlab
