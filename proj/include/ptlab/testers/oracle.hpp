#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ptlab/families/common.hpp"

namespace ptlab {

// Thrown by CountingOracle when a fresh query would exceed the budget.
struct BudgetExhausted {};

// Value oracle with a query budget. Repeated queries hit the cache and are not
// charged; every fresh query is logged in order.
class CountingOracle {
 public:
  CountingOracle(const BooleanFunction& f, std::uint64_t budget);

  bool query(const BitString& x);
  // Cached value without charging; nullopt if x was never queried.
  std::optional<bool> peek(const BitString& x) const;

  std::size_t dimension() const { return f_.dimension(); }
  std::uint64_t used() const { return log_.size(); }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t remaining() const { return budget_ - used(); }
  const std::vector<std::pair<BitString, bool>>& log() const { return log_; }

 private:
  const BooleanFunction& f_;
  std::uint64_t budget_;
  std::unordered_map<BitString, bool, BitStringHash> cache_;
  std::vector<std::pair<BitString, bool>> log_;
};

}  // namespace ptlab
