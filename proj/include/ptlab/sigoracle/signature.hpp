#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ptlab/core/json_io.hpp"
#include "ptlab/families/mono.hpp"
#include "ptlab/families/unate.hpp"

namespace ptlab {

// Term-level pattern. Unique(i) is e_i; Multi(i, i2) is e_{i,i2} with i < i2.
struct Sigma {
  enum class Kind { zero, unique, multi };
  Kind kind = Kind::zero;
  std::uint64_t i = 0;
  std::uint64_t i2 = 0;

  static Sigma zero() { return {}; }
  static Sigma unique(std::uint64_t i) { return {Kind::unique, i, 0}; }
  static Sigma multi(std::uint64_t i, std::uint64_t i2) { return {Kind::multi, i, i2}; }
  friend bool operator==(const Sigma&, const Sigma&) = default;
};

// Clause-level pattern of the unique satisfied term. UniqueFalse(j) is the
// complement of e_j; MultiFalse(j, j2) the complement of e_{j,j2}.
struct Tau {
  enum class Kind { bottom, all_one, unique_false, multi_false };
  Kind kind = Kind::bottom;
  std::uint64_t j = 0;
  std::uint64_t j2 = 0;

  static Tau bottom() { return {}; }
  static Tau all_one() { return {Kind::all_one, 0, 0}; }
  static Tau unique_false(std::uint64_t j) { return {Kind::unique_false, j, 0}; }
  static Tau multi_false(std::uint64_t j, std::uint64_t j2) { return {Kind::multi_false, j, j2}; }
  friend bool operator==(const Tau&, const Tau&) = default;
};

enum class Entry { zero, one, star };

// Coordinate t of the {0,1,*}-vector encoded by sigma / tau.
Entry sigma_entry(const Sigma& s, std::uint64_t t);
Entry tau_entry(const Tau& tau, std::uint64_t t);

struct FullSignature {
  Sigma sigma;
  Tau tau;
  std::optional<bool> a;
  std::optional<bool> b;

  // Throws InvalidArgument when the tuple is not a valid signature.
  void validate() const;
  friend bool operator==(const FullSignature&, const FullSignature&) = default;
};

struct UnateSignature {
  Sigma sigma;
  std::optional<bool> a;
  std::optional<bool> b;

  void validate() const;
  friend bool operator==(const UnateSignature&, const UnateSignature&) = default;
};

// Requires x in the middle band; throws ContractViolation otherwise.
FullSignature mono_full_signature(const MonoInstance& inst, const BitString& x);
bool value_from_mono_signature(WeightClass weight_class, const std::optional<FullSignature>& sig);

// Sigma is computed on y = x xor (r o s); requires |y_M| in the band.
UnateSignature unate_signature(const UnateInstance& inst, const BitString& x);
// Same shape for the one-level family: a, b are dictator values at x.
UnateSignature onelevel_signature(const OneLevelInstance& inst, const BitString& x);
bool value_from_unate_signature(WeightClass band_class, const std::optional<UnateSignature>& sig);

Json to_json(const Sigma& s);
Json to_json(const Tau& t);
Json to_json(const FullSignature& s);
Json to_json(const UnateSignature& s);
std::string to_string(const FullSignature& s);
std::string to_string(const UnateSignature& s);

}  // namespace ptlab
