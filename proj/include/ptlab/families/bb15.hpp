#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptlab/core/index_set.hpp"
#include "ptlab/families/common.hpp"

namespace ptlab {

// Truncated Talagrand DNF; in the no world it is evaluated at x^(S).
class BB15Instance : public BooleanFunction {
 public:
  static constexpr std::uint64_t kTermCap = std::uint64_t{1} << 22;

  static BB15Instance sample(std::uint32_t n, World world, std::uint64_t seed);
  static BB15Instance from_parts(std::uint32_t n, World world, std::vector<std::vector<std::uint32_t>> terms,
                                 IndexSet s);

  std::size_t dimension() const override { return n_; }
  bool eval(const BitString& x) const override;

  std::uint32_t n() const { return n_; }
  std::uint64_t num_terms() const { return terms_.size(); }
  World world() const { return world_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const std::vector<std::vector<std::uint32_t>>& terms() const { return terms_; }
  const IndexSet& flip_set_s() const { return s_; }
  const Band& band() const { return band_; }

  // When true (default) the band is tested on |x|; otherwise on |x^(S)|.
  bool truncate_on_query_weight() const { return truncate_on_query_; }
  void set_truncate_on_query_weight(bool v) { truncate_on_query_ = v; }

  bool dnf(const BitString& y) const;

 private:
  friend struct InstanceCodec;
  BB15Instance() = default;
  void build_masks();

  std::uint32_t n_ = 0;
  World world_ = World::yes;
  std::optional<std::uint64_t> seed_;
  Band band_;
  bool truncate_on_query_ = true;
  std::vector<std::vector<std::uint32_t>> terms_;
  std::vector<BitString> masks_;
  IndexSet s_;
  BitString s_mask_;
};

}  // namespace ptlab
