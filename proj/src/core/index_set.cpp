#include "ptlab/core/index_set.hpp"

#include <algorithm>

#include "ptlab/core/error.hpp"

namespace ptlab {

IndexSet::IndexSet(std::size_t n, std::vector<std::uint32_t> members) : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InvalidArgument("index set has duplicate members");
  if (!members_.empty() && members_.back() >= n) throw InvalidArgument("index out of range");
}

IndexSet IndexSet::from_one_based(std::size_t n, const std::vector<std::uint32_t>& members) {
  std::vector<std::uint32_t> zb;
  zb.reserve(members.size());
  for (auto m : members) {
    if (m < 1 || m > n) throw InvalidArgument("index out of range");
    zb.push_back(m - 1);
  }
  return IndexSet(n, std::move(zb));
}

IndexSet IndexSet::from_mask(const BitString& mask) { return IndexSet(mask.size(), mask.ones_indices()); }

bool IndexSet::contains(std::uint32_t k) const { return std::binary_search(members_.begin(), members_.end(), k); }

std::vector<std::uint32_t> IndexSet::one_based() const {
  std::vector<std::uint32_t> out(members_);
  for (auto& m : out) ++m;
  return out;
}

BitString IndexSet::mask() const { return BitString::from_indices(n_, members_); }

BitString flip_set(const BitString& x, const IndexSet& s) {
  if (s.dimension() != x.size()) throw InvalidArgument("dimension mismatch");
  return flip_set(x, s.members());
}

BitString flip_set(const BitString& x, const std::vector<std::uint32_t>& s) {
  BitString y = x;
  for (auto k : s) {
    if (k >= x.size()) throw InvalidArgument("index out of range");
    y.flip(k);
  }
  return y;
}

}  // namespace ptlab
