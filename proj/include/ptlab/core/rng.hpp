#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "ptlab/core/bitstring.hpp"

namespace ptlab {

// Stateless keyed generator. The i-th output is a pure function of
// (master_seed, domain_tag, counters, i), so any sub-stream can be re-derived
// on demand without replaying the others.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view domain_tag,
            std::initializer_list<std::uint64_t> counters = {});
  RngStream(std::uint64_t master_seed, std::string_view domain_tag,
            std::span<const std::uint64_t> counters);

  std::uint64_t next_u64() noexcept;
  // Uniform in 1..range. range >= 1.
  std::uint64_t draw(std::uint64_t range);
  // Uniform in 0..range-1. range >= 1.
  std::uint64_t below(std::uint64_t range);
  double uniform() noexcept;  // [0, 1)
  bool bernoulli(double p) noexcept;
  bool coin() noexcept { return next_u64() >> 63; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t calls() const noexcept { return index_; }

 private:
  std::uint64_t key_;
  std::uint64_t index_ = 0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;
std::uint64_t fnv1a64(std::string_view s) noexcept;

BitString random_bitstring(RngStream& rng, std::size_t n);
// Partial Fisher-Yates: k distinct elements of pool, in draw order.
std::vector<std::uint32_t> sample_without_replacement(RngStream& rng,
                                                      std::vector<std::uint32_t> pool,
                                                      std::size_t k);
void shuffle(RngStream& rng, std::vector<std::uint32_t>& v);

}  // namespace ptlab
