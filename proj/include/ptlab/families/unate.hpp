#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptlab/core/index_set.hpp"
#include "ptlab/families/common.hpp"

namespace ptlab {

// Single-level multiplexer over subset-style terms: Gamma_T and f_{T,H}.
// Shared by the unateness and the one-level families.
struct TermTable {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> terms;  // sorted subsets
  std::vector<BitString> masks;
  std::vector<Dictator> dictators;

  void build_masks();
  std::vector<std::uint64_t> satisfied_terms(const BitString& y, std::size_t limit) const;
  Gamma multiplexer(const BitString& y) const;
};

class UnateInstance : public BooleanFunction {
 public:
  static std::uint64_t num_terms_for(std::uint32_t n);

  static UnateInstance sample(std::uint32_t n, World world, std::uint64_t seed);
  // r is indexed by M's members, s by the members of the complement, both ascending.
  static UnateInstance from_parts(std::uint32_t n, World world, IndexSet m,
                                  std::vector<std::vector<std::uint32_t>> terms, std::vector<Dictator> dictators,
                                  std::vector<bool> r, std::vector<bool> s);

  std::size_t dimension() const override { return table_.n; }
  bool eval(const BitString& x) const override;
  // f_{M,T,H}(z): the function before orientation, so that eval(x) = eval_deoriented(x xor orientation()).
  bool eval_deoriented(const BitString& z) const;

  std::uint32_t n() const { return table_.n; }
  std::uint64_t num_terms() const { return table_.terms.size(); }
  World world() const { return world_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const IndexSet& m() const { return m_; }
  const IndexSet& m_complement() const { return mbar_; }
  const BitString& m_mask() const { return m_mask_; }
  const BitString& m_complement_mask() const { return mbar_mask_; }
  const std::vector<std::vector<std::uint32_t>>& terms() const { return table_.terms; }
  const std::vector<Dictator>& dictators() const { return table_.dictators; }
  const TermTable& table() const { return table_; }
  const std::vector<bool>& r() const { return r_; }
  const std::vector<bool>& s() const { return s_; }
  // r o s as one n-bit string.
  const BitString& orientation() const { return orient_; }
  const Band& band() const { return band_; }

  WeightClass band_class_deoriented(const BitString& y) const { return band_.classify(count_and(y, m_mask_)); }

 private:
  friend struct InstanceCodec;
  UnateInstance() = default;

  World world_ = World::yes;
  std::optional<std::uint64_t> seed_;
  TermTable table_;
  IndexSet m_, mbar_;
  BitString m_mask_, mbar_mask_, orient_;
  std::vector<bool> r_, s_;
  Band band_;
};

class OneLevelInstance : public BooleanFunction {
 public:
  static OneLevelInstance sample(std::uint32_t n, World world, std::uint64_t seed);
  static OneLevelInstance from_parts(std::uint32_t n, World world, std::vector<std::vector<std::uint32_t>> terms,
                                     std::vector<Dictator> dictators);

  std::size_t dimension() const override { return table_.n; }
  bool eval(const BitString& x) const override;
  Gamma multiplexer(const BitString& x) const;

  std::uint32_t n() const { return table_.n; }
  std::uint64_t num_terms() const { return table_.terms.size(); }
  World world() const { return world_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const TermTable& table() const { return table_; }
  const Band& band() const { return band_; }

 private:
  friend struct InstanceCodec;
  OneLevelInstance() = default;

  World world_ = World::yes;
  std::optional<std::uint64_t> seed_;
  TermTable table_;
  Band band_;
};

// f_i on dimension n+2 with z = (a, b, x): coordinate 0 is a, 1 is b, 2+k is x_{k+1}.
class FiInstance : public BooleanFunction {
 public:
  FiInstance(std::uint32_t n, std::uint32_t i);  // i 0-based

  std::size_t dimension() const override { return n_ + 2; }
  bool eval(const BitString& z) const override;

  std::uint32_t n() const { return n_; }
  std::uint32_t i() const { return i_; }

 private:
  std::uint32_t n_;
  std::uint32_t i_;
};

}  // namespace ptlab
