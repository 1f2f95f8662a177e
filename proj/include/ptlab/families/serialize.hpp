#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ptlab/core/json_io.hpp"
#include "ptlab/families/bb15.hpp"
#include "ptlab/families/mono.hpp"
#include "ptlab/families/unate.hpp"

namespace ptlab {

using AnyInstance = std::variant<MonoInstance, BB15Instance, UnateInstance, OneLevelInstance, FiInstance>;

// Family names on the wire: mono, bb15, unate, onelevel, fi.
std::string_view family_name(const AnyInstance& inst);
const BooleanFunction& as_function(const AnyInstance& inst);

// For fi, `seed` selects i uniformly in [n].
AnyInstance sample_instance(std::string_view family, std::uint32_t n, World world, std::uint64_t seed,
                            Storage storage = Storage::eager);

Json instance_to_json(const AnyInstance& inst);
AnyInstance instance_from_json(const Json& j);

struct InstanceCodec {
  static Json encode(const MonoInstance& m);
  static Json encode(const BB15Instance& b);
  static Json encode(const UnateInstance& u);
  static Json encode(const OneLevelInstance& o);
  static Json encode(const FiInstance& f);
  static MonoInstance decode_mono(const Json& j);
  static BB15Instance decode_bb15(const Json& j);
  static UnateInstance decode_unate(const Json& j);
  static OneLevelInstance decode_onelevel(const Json& j);
  static FiInstance decode_fi(const Json& j);
};

}  // namespace ptlab
