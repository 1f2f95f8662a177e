#include "ptlab/families/truth_table.hpp"

#include <bit>

#include "ptlab/core/error.hpp"

namespace ptlab {

TruthTable::TruthTable(std::uint32_t n) : n_(n) {
  if (n == 0 || n > kHardCap) throw ResourceLimit("truth table dimension above cap");
  bits_.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
}

std::uint64_t TruthTable::count_ones() const {
  std::uint64_t c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

TruthTable TruthTable::reoriented(std::uint64_t r) const {
  TruthTable out(n_);
  for (std::uint64_t x = 0; x < size(); ++x)
    if (get(x ^ r)) out.set(x, true);
  return out;
}

TruthTable truth_table(const BooleanFunction& f, std::uint32_t cap) {
  const std::size_t n = f.dimension();
  if (n > cap || n > TruthTable::kHardCap) throw ResourceLimit("truth table dimension above cap");
  TruthTable t(static_cast<std::uint32_t>(n));
  BitString x(n);
  for (std::uint64_t idx = 0; idx < t.size(); ++idx) {
    for (std::size_t k = 0; k < n; ++k) x.set(k, (idx >> k) & 1);
    if (f.eval(x)) t.set(idx, true);
  }
  return t;
}

std::uint64_t count_violating_edges(const TruthTable& t) {
  std::uint64_t c = 0;
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    if (!t.get(x)) continue;
    for (std::uint32_t i = 0; i < t.n(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (!(x & bit) && !t.get(x | bit)) ++c;
    }
  }
  return c;
}

}  // namespace ptlab
