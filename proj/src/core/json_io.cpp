#include "ptlab/core/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptlab/core/error.hpp"

namespace ptlab {

Json bitstring_to_json(const BitString& x) { return Json{{"n", x.size()}, {"hex", x.to_hex()}}; }

BitString bitstring_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("hex")) throw InvalidArgument("bit string needs n and hex");
  return BitString::from_hex(j.at("n").get<std::size_t>(), j.at("hex").get<std::string>());
}

Json index_set_to_json(const IndexSet& s) { return Json(s.one_based()); }

IndexSet index_set_from_json(std::size_t n, const Json& j) {
  if (!j.is_array()) throw InvalidArgument("index set must be an array");
  return IndexSet::from_one_based(n, j.get<std::vector<std::uint32_t>>());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace ptlab
