#pragma once

#include <cstdint>
#include <vector>

#include "ptlab/families/common.hpp"

namespace ptlab {

// Packed table over {0,1}^n indexed by x as an integer (bit k is x_{k+1}).
class TruthTable {
 public:
  static constexpr std::uint32_t kDefaultCap = 20;
  static constexpr std::uint32_t kHardCap = 26;

  explicit TruthTable(std::uint32_t n);

  std::uint32_t n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  bool get(std::uint64_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1u; }
  void set(std::uint64_t idx, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (idx & 63);
    if (v)
      bits_[idx >> 6] |= m;
    else
      bits_[idx >> 6] &= ~m;
  }
  std::uint64_t count_ones() const;
  // x -> f(x xor r), r given as an integer mask.
  TruthTable reoriented(std::uint64_t r) const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::uint32_t n_;
  std::vector<std::uint64_t> bits_;
};

TruthTable truth_table(const BooleanFunction& f, std::uint32_t cap = TruthTable::kDefaultCap);

// Adapter so a table can be queried like any other function.
class TableFunction : public BooleanFunction {
 public:
  explicit TableFunction(TruthTable t) : table_(std::move(t)) {}
  std::size_t dimension() const override { return table_.n(); }
  bool eval(const BitString& x) const override { return table_.get(x.to_integer()); }
  const TruthTable& table() const { return table_; }

 private:
  TruthTable table_;
};

// Number of hypercube edges (x, x^(i)) with x_i = 0, f(x) = 1, f(x^(i)) = 0.
std::uint64_t count_violating_edges(const TruthTable& t);

}  // namespace ptlab
