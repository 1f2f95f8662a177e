#pragma once

#include <cmath>
#include <cstdint>

namespace ptlab {

// Exact floor(sqrt(v)).
inline std::uint64_t isqrt(std::uint64_t v) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline bool is_perfect_square(std::uint64_t v) {
  const std::uint64_t r = isqrt(v);
  return r * r == v;
}

// All logarithms in thresholds are base 2.
inline double log2n(double n) { return std::log2(n); }

}  // namespace ptlab
