#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptlab/families/common.hpp"

namespace ptlab {

// Two-level random function: N terms of term_len i.i.d. variables, N clauses per
// term, one (anti-)dictator per (term, clause) cell, truncated outside the band.
class MonoInstance : public BooleanFunction {
 public:
  static constexpr std::uint64_t kExplicitCellCap = std::uint64_t{1} << 22;
  static constexpr std::uint64_t kTermCap = std::uint64_t{1} << 22;

  // n a perfect square >= 9, N = 2^sqrt(n), terms and clauses of sqrt(n) variables.
  static MonoInstance sample(std::uint32_t n, World world, std::uint64_t seed, Storage storage);
  // Same sampling procedure with N and the term length decoupled from n. The band
  // stays n/2 +- sqrt(n) with real sqrt(n).
  static MonoInstance sample_shaped(std::uint32_t n, std::uint64_t num_terms, std::uint32_t term_len, World world,
                                    std::uint64_t seed, Storage storage);
  // Hand-built instance. clauses and dictators are row-major N x N.
  static MonoInstance from_parts(std::uint32_t n, World world, std::vector<std::vector<std::uint32_t>> terms,
                                 std::vector<std::vector<std::uint32_t>> clauses, std::vector<Dictator> dictators);

  std::size_t dimension() const override { return n_; }
  bool eval(const BitString& x) const override;

  std::uint32_t n() const { return n_; }
  std::uint64_t num_terms() const { return N_; }
  std::uint32_t term_len() const { return term_len_; }
  World world() const { return world_; }
  Storage storage() const { return storage_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const Band& band() const { return band_; }

  std::vector<std::uint32_t> term(std::uint64_t i) const;
  std::vector<std::uint32_t> clause(std::uint64_t i, std::uint64_t j) const;
  Dictator dictator(std::uint64_t i, std::uint64_t j) const;

  bool term_satisfied(std::uint64_t i, const BitString& x) const;
  // C_{i,j}(x) = 0, i.e. every clause variable is 0 in x.
  bool clause_falsified(std::uint64_t i, std::uint64_t j, const BitString& x) const;

  // Indices of the first `limit` satisfied terms / falsified clauses of term i, ascending.
  std::vector<std::uint64_t> satisfied_terms(const BitString& x, std::size_t limit) const;
  std::vector<std::uint64_t> falsified_clauses(std::uint64_t i, const BitString& x, std::size_t limit) const;

  Gamma multiplexer(const BitString& x) const;
  WeightClass weight_class(const BitString& x) const { return band_.classify(x.weight()); }

  MonoInstance with_world(World w) const;

 private:
  friend struct InstanceCodec;
  MonoInstance() = default;
  void check_dim(const BitString& x) const;
  void build_term_masks();

  std::uint32_t n_ = 0;
  std::uint64_t N_ = 0;
  std::uint32_t term_len_ = 0;
  World world_ = World::yes;
  Storage storage_ = Storage::eager;
  std::optional<std::uint64_t> seed_;
  Band band_;
  std::size_t words_ = 0;

  // Term variables, N x term_len (custom instances may have ragged terms; then
  // term_offsets_ is used).
  std::vector<std::uint32_t> term_vars_;
  std::vector<std::uint64_t> term_offsets_;
  std::vector<std::uint64_t> term_masks_;  // N x words_

  // Explicit storage only.
  std::vector<std::uint32_t> clause_vars_;
  std::vector<std::uint64_t> clause_offsets_;
  std::vector<std::uint64_t> clause_masks_;  // N*N x words_
  std::vector<Dictator> dictators_;
};

}  // namespace ptlab
