#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "ptlab/core/json_io.hpp"

namespace ptlab {

// Thresholds for the bad-edge, balance and breach rules. Unset fields take
// their default expression in n (logarithms base 2).
struct ClassifierConfig {
  double alpha = 4.0;
  std::optional<double> mono_shrink;     // alpha * sqrt(n) * log n
  std::optional<double> unate_shrink;    // n^{2/3} * log n, also the balance trigger
  std::optional<double> balance_ones;    // unate_shrink / 8
  std::optional<double> breach_size;     // n / 10
  std::optional<double> breach_cap;      // n^{1/3} / log n
  std::optional<double> shared_ones_slack;  // alpha * sqrt(n) * log n, for the one-level bad outcome
  std::size_t balance_subset_cap = 12;
  std::uint64_t balance_subset_budget = std::uint64_t{1} << 22;

  void validate() const;

  double mono_shrink_threshold(std::uint32_t n) const;
  double unate_shrink_threshold(std::uint32_t n) const;
  double balance_ones_threshold(std::uint32_t n) const;
  double breach_size_threshold(std::uint32_t n) const;
  double breach_cap_threshold(std::uint32_t n) const;
  double shared_ones_threshold(std::uint32_t n) const;

  Json to_json(std::uint32_t n) const;
};

}  // namespace ptlab
