#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ptlab/core/bitstring.hpp"

namespace ptlab {

// Sorted duplicate-free subset of [n], stored 0-based.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::size_t n, std::vector<std::uint32_t> members);

  static IndexSet from_one_based(std::size_t n, const std::vector<std::uint32_t>& members);
  static IndexSet from_mask(const BitString& mask);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::uint32_t k) const;
  const std::vector<std::uint32_t>& members() const noexcept { return members_; }
  std::vector<std::uint32_t> one_based() const;
  BitString mask() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> members_;
};

// x^(S): x with every coordinate in S flipped.
BitString flip_set(const BitString& x, const IndexSet& s);
BitString flip_set(const BitString& x, const std::vector<std::uint32_t>& s);

}  // namespace ptlab
