#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "ptlab/core/bitstring.hpp"

namespace ptlab {

enum class World { yes, no };
enum class Storage { eager, lazy };  // "explicit" / "lazy" on the wire

std::string_view to_string(World w);
std::string_view to_string(Storage s);
World parse_world(std::string_view s);
Storage parse_storage(std::string_view s);

struct Dictator {
  std::uint32_t index = 0;  // 0-based
  bool positive = true;
  bool eval(const BitString& x) const { return x.get(index) == positive; }
  friend bool operator==(const Dictator&, const Dictator&) = default;
};

// Multiplexer output. Zero and One stand for the forced constants 0* and 1*.
struct Gamma {
  enum class Kind { zero, one, index, pair };
  Kind kind = Kind::zero;
  std::uint64_t i = 0;  // 0-based term index for index/pair
  std::uint64_t j = 0;  // 0-based clause index for pair

  static Gamma zero() { return {Kind::zero, 0, 0}; }
  static Gamma one() { return {Kind::one, 0, 0}; }
  static Gamma index(std::uint64_t i) { return {Kind::index, i, 0}; }
  static Gamma pair(std::uint64_t i, std::uint64_t j) { return {Kind::pair, i, j}; }
  friend bool operator==(const Gamma&, const Gamma&) = default;
};

std::string to_string(const Gamma& g);

enum class WeightClass { low, middle, high };

// Middle band center +- radius, inclusive at both ends.
struct Band {
  double center = 0;
  double radius = 0;
  WeightClass classify(std::size_t w) const {
    const double d = static_cast<double>(w);
    if (d < center - radius) return WeightClass::low;
    if (d > center + radius) return WeightClass::high;
    return WeightClass::middle;
  }
};

class BooleanFunction {
 public:
  virtual ~BooleanFunction() = default;
  virtual std::size_t dimension() const = 0;
  virtual bool eval(const BitString& x) const = 0;
};

}  // namespace ptlab
