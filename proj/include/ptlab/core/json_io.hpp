#pragma once

#include <string>

#include "json.hpp"
#include "ptlab/core/bitstring.hpp"
#include "ptlab/core/index_set.hpp"

namespace ptlab {

using Json = nlohmann::json;

// {"n": n, "hex": "..."}
Json bitstring_to_json(const BitString& x);
BitString bitstring_from_json(const Json& j);

// 1-based member list.
Json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(std::size_t n, const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ptlab
