#include "ptlab/testers/unate_violation.hpp"

#include <unordered_map>

#include "ptlab/core/error.hpp"
#include "ptlab/core/math.hpp"

namespace ptlab {

namespace {

std::optional<UnateViolation> exact_mode(const LabeledQueries& q, std::size_t cap) {
  if (q.empty()) return std::nullopt;
  const std::size_t n = q.front().first.size();
  BitString varies(n);
  for (const auto& [x, v] : q) varies |= (x ^ q.front().first);
  const auto coords = varies.ones_indices();
  if (coords.size() > cap || coords.size() > 30)
    throw ResourceLimit("too many coordinates on which the queries differ for exact orientation search");

  auto compress = [&](const BitString& x) {
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) c |= std::uint64_t{x.get(coords[k])} << k;
    return c;
  };
  // Pair (x, y) with f(x)=1, f(y)=0 violates under r iff r agrees with x wherever x and y differ.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (diff, x & diff)
  std::vector<std::uint64_t> ones, zeros;
  for (const auto& [x, v] : q) (v ? ones : zeros).push_back(compress(x));
  for (auto a : ones)
    for (auto b : zeros)
      if (a != b) pairs.emplace_back(a ^ b, a & (a ^ b));
  if (pairs.empty()) return std::nullopt;

  const std::uint64_t total = std::uint64_t{1} << coords.size();
  for (std::uint64_t r = 0; r < total; ++r) {
    bool covered = false;
    for (auto [diff, val] : pairs)
      if ((r & diff) == val) {
        covered = true;
        break;
      }
    if (!covered) return std::nullopt;
  }
  UnateViolation out;
  out.orientations_checked = total;
  return out;
}

std::optional<UnateViolation> directional_mode(const LabeledQueries& q) {
  if (q.empty()) return std::nullopt;
  const std::size_t n = q.front().first.size();
  std::unordered_map<BitString, bool, BitStringHash> value;
  for (const auto& [x, v] : q) value.emplace(x, v);
  std::vector<std::optional<BitString>> mono(n), anti(n);
  for (const auto& [x, v] : q)
    for (std::size_t i = 0; i < n; ++i) {
      if (x.get(i)) continue;
      BitString up = x;
      up.set(i);
      auto it = value.find(up);
      if (it == value.end() || it->second == v) continue;
      auto& slot = v ? anti[i] : mono[i];
      if (!slot) slot = x;
    }
  for (std::size_t i = 0; i < n; ++i)
    if (mono[i] && anti[i]) {
      UnateViolation out;
      ViolationWitness w;
      w.kind = ViolationWitness::Kind::unate_per_direction;
      w.direction = static_cast<std::uint32_t>(i);
      w.mono_edge = *mono[i];
      w.anti_edge = *anti[i];
      out.directional = w;
      return out;
    }
  return std::nullopt;
}

}  // namespace

std::optional<UnateViolation> has_unate_violation(const LabeledQueries& q, UnateViolationMode mode,
                                                  std::size_t max_coordinates) {
  for (const auto& [x, v] : q)
    if (x.size() != q.front().first.size()) throw InvalidArgument("queries of different dimension");
  if (mode == UnateViolationMode::exact_orientations) return exact_mode(q, max_coordinates);
  return directional_mode(q);
}

bool check_orientation(const std::vector<BitString>& q, const BitString& r, std::uint32_t n) {
  if (r.size() != n) throw InvalidArgument("orientation dimension mismatch");
  const double limit = 2.0 * log2n(n);
  std::vector<BitString> oriented;
  oriented.reserve(q.size());
  for (const auto& x : q) {
    if (x.size() != n) throw InvalidArgument("query dimension mismatch");
    oriented.push_back(x ^ r);
  }
  for (std::size_t a = 0; a < oriented.size(); ++a)
    for (std::size_t b = a + 1; b < oriented.size(); ++b)
      if ((precedes(oriented[a], oriented[b]) || precedes(oriented[b], oriented[a])) &&
          static_cast<double>(hamming_distance(oriented[a], oriented[b])) > limit)
        return false;
  return true;
}

OrientationSearch find_good_orientation(const std::vector<BitString>& q, std::uint32_t n, RngStream& rng,
                                        std::uint64_t max_tries) {
  OrientationSearch out;
  while (out.tries < max_tries) {
    ++out.tries;
    BitString r = random_bitstring(rng, n);
    if (check_orientation(q, r, n)) {
      out.r = std::move(r);
      return out;
    }
  }
  return out;
}

}  // namespace ptlab
