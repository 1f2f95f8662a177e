#include "ptlab/families/serialize.hpp"

#include "ptlab/core/error.hpp"
#include "ptlab/core/rng.hpp"

namespace ptlab {

std::string_view to_string(World w) { return w == World::yes ? "yes" : "no"; }
std::string_view to_string(Storage s) { return s == Storage::eager ? "explicit" : "lazy"; }

World parse_world(std::string_view s) {
  if (s == "yes") return World::yes;
  if (s == "no") return World::no;
  throw InvalidArgument("world must be yes or no");
}

Storage parse_storage(std::string_view s) {
  if (s == "explicit") return Storage::eager;
  if (s == "lazy") return Storage::lazy;
  throw InvalidArgument("storage must be explicit or lazy");
}

std::string to_string(const Gamma& g) {
  switch (g.kind) {
    case Gamma::Kind::zero:
      return "Zero";
    case Gamma::Kind::one:
      return "One";
    case Gamma::Kind::index:
      return "Index(" + std::to_string(g.i + 1) + ")";
    case Gamma::Kind::pair:
      return "Pair(" + std::to_string(g.i + 1) + "," + std::to_string(g.j + 1) + ")";
  }
  return "?";
}

namespace {

Json vars_json(const std::vector<std::uint32_t>& v) {
  Json a = Json::array();
  for (auto k : v) a.push_back(k + 1);
  return a;
}

std::vector<std::uint32_t> vars_from(const Json& j, std::uint32_t n) {
  std::vector<std::uint32_t> v;
  for (auto& e : j) {
    const auto k = e.get<std::int64_t>();
    if (k < 1 || k > static_cast<std::int64_t>(n)) throw InvalidArgument("variable index out of range");
    v.push_back(static_cast<std::uint32_t>(k - 1));
  }
  return v;
}

// Signed 1-based index: +k is x_k, -k is not x_k.
Json dictator_json(const Dictator& d) {
  const std::int64_t k = d.index + 1;
  return d.positive ? k : -k;
}

Dictator dictator_from(const Json& j, std::uint32_t n) {
  const auto k = j.get<std::int64_t>();
  const std::int64_t a = k < 0 ? -k : k;
  if (a < 1 || a > static_cast<std::int64_t>(n)) throw InvalidArgument("dictator index out of range");
  return Dictator{static_cast<std::uint32_t>(a - 1), k > 0};
}

Json bits_json(const std::vector<bool>& v) {
  Json a = Json::array();
  for (bool b : v) a.push_back(b ? 1 : 0);
  return a;
}

std::vector<bool> bits_from(const Json& j) {
  std::vector<bool> v;
  for (auto& e : j) v.push_back(e.get<int>() != 0);
  return v;
}

Json header(std::string_view family, std::uint32_t n, std::uint64_t N, World w, std::optional<std::uint64_t> seed,
            std::string_view storage) {
  Json j;
  j["family"] = family;
  j["n"] = n;
  j["N"] = N;
  j["world"] = to_string(w);
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["storage"] = storage;
  return j;
}

std::optional<std::uint64_t> seed_from(const Json& j) {
  if (!j.contains("seed") || j.at("seed").is_null()) return std::nullopt;
  return j.at("seed").get<std::uint64_t>();
}

}  // namespace

Json InstanceCodec::encode(const MonoInstance& m) {
  Json j = header("mono", m.n(), m.num_terms(), m.world(), m.seed(), to_string(m.storage()));
  j["term_len"] = m.term_len();
  if (m.storage() == Storage::lazy) return j;
  Json t = Json::array(), c = Json::array(), h = Json::array();
  for (std::uint64_t i = 0; i < m.num_terms(); ++i) {
    t.push_back(vars_json(m.term(i)));
    Json crow = Json::array(), hrow = Json::array();
    for (std::uint64_t k = 0; k < m.num_terms(); ++k) {
      crow.push_back(vars_json(m.clause(i, k)));
      hrow.push_back(dictator_json(m.dictator(i, k)));
    }
    c.push_back(std::move(crow));
    h.push_back(std::move(hrow));
  }
  j["T"] = std::move(t);
  j["C"] = std::move(c);
  j["H"] = std::move(h);
  return j;
}

MonoInstance InstanceCodec::decode_mono(const Json& j) {
  const auto n = j.at("n").get<std::uint32_t>();
  const World w = parse_world(j.at("world").get<std::string>());
  const Storage st = parse_storage(j.value("storage", std::string("explicit")));
  const auto seed = seed_from(j);
  if (st == Storage::lazy) {
    if (!seed) throw InvalidArgument("lazy instances need a seed");
    return MonoInstance::sample_shaped(n, j.at("N").get<std::uint64_t>(), j.at("term_len").get<std::uint32_t>(), w,
                                       *seed, Storage::lazy);
  }
  std::vector<std::vector<std::uint32_t>> terms, clauses;
  std::vector<Dictator> dict;
  for (auto& t : j.at("T")) terms.push_back(vars_from(t, n));
  for (auto& row : j.at("C"))
    for (auto& c : row) clauses.push_back(vars_from(c, n));
  for (auto& row : j.at("H"))
    for (auto& h : row) dict.push_back(dictator_from(h, n));
  MonoInstance m = MonoInstance::from_parts(n, w, std::move(terms), std::move(clauses), std::move(dict));
  if (j.contains("N") && j.at("N").get<std::uint64_t>() != m.num_terms()) throw InvalidArgument("N does not match T");
  m.seed_ = seed;
  if (j.contains("term_len")) m.term_len_ = j.at("term_len").get<std::uint32_t>();
  return m;
}

Json InstanceCodec::encode(const BB15Instance& b) {
  Json j = header("bb15", b.n(), b.num_terms(), b.world(), b.seed(), "explicit");
  j["truncate_on_query_weight"] = b.truncate_on_query_weight();
  Json t = Json::array();
  for (auto& term : b.terms()) t.push_back(vars_json(term));
  j["T"] = std::move(t);
  j["S"] = index_set_to_json(b.flip_set_s());
  return j;
}

BB15Instance InstanceCodec::decode_bb15(const Json& j) {
  const auto n = j.at("n").get<std::uint32_t>();
  const World w = parse_world(j.at("world").get<std::string>());
  std::vector<std::vector<std::uint32_t>> terms;
  for (auto& t : j.at("T")) terms.push_back(vars_from(t, n));
  BB15Instance b = BB15Instance::from_parts(n, w, std::move(terms), index_set_from_json(n, j.at("S")));
  b.seed_ = seed_from(j);
  b.truncate_on_query_ = j.value("truncate_on_query_weight", true);
  return b;
}

Json InstanceCodec::encode(const UnateInstance& u) {
  Json j = header("unate", u.n(), u.num_terms(), u.world(), u.seed(), "explicit");
  j["M"] = index_set_to_json(u.m());
  Json t = Json::array(), h = Json::array();
  for (std::uint64_t i = 0; i < u.num_terms(); ++i) {
    t.push_back(vars_json(u.terms()[i]));
    h.push_back(dictator_json(u.dictators()[i]));
  }
  j["T"] = std::move(t);
  j["H"] = std::move(h);
  j["r"] = bits_json(u.r());
  j["s"] = bits_json(u.s());
  return j;
}

UnateInstance InstanceCodec::decode_unate(const Json& j) {
  const auto n = j.at("n").get<std::uint32_t>();
  const World w = parse_world(j.at("world").get<std::string>());
  std::vector<std::vector<std::uint32_t>> terms;
  std::vector<Dictator> dict;
  for (auto& t : j.at("T")) terms.push_back(vars_from(t, n));
  for (auto& h : j.at("H")) dict.push_back(dictator_from(h, n));
  UnateInstance u = UnateInstance::from_parts(n, w, index_set_from_json(n, j.at("M")), std::move(terms),
                                              std::move(dict), bits_from(j.at("r")), bits_from(j.at("s")));
  u.seed_ = seed_from(j);
  return u;
}

Json InstanceCodec::encode(const OneLevelInstance& o) {
  Json j = header("onelevel", o.n(), o.num_terms(), o.world(), o.seed(), "explicit");
  Json t = Json::array(), h = Json::array();
  for (std::uint64_t i = 0; i < o.num_terms(); ++i) {
    t.push_back(vars_json(o.table().terms[i]));
    h.push_back(dictator_json(o.table().dictators[i]));
  }
  j["T"] = std::move(t);
  j["H"] = std::move(h);
  return j;
}

OneLevelInstance InstanceCodec::decode_onelevel(const Json& j) {
  const auto n = j.at("n").get<std::uint32_t>();
  const World w = parse_world(j.at("world").get<std::string>());
  std::vector<std::vector<std::uint32_t>> terms;
  std::vector<Dictator> dict;
  for (auto& t : j.at("T")) terms.push_back(vars_from(t, n));
  for (auto& h : j.at("H")) dict.push_back(dictator_from(h, n));
  OneLevelInstance o = OneLevelInstance::from_parts(n, w, std::move(terms), std::move(dict));
  o.seed_ = seed_from(j);
  return o;
}

Json InstanceCodec::encode(const FiInstance& f) {
  Json j;
  j["family"] = "fi";
  j["n"] = f.n();
  j["i"] = f.i() + 1;
  j["dimension"] = f.dimension();
  return j;
}

FiInstance InstanceCodec::decode_fi(const Json& j) {
  const auto i = j.at("i").get<std::uint32_t>();
  if (i < 1) throw InvalidArgument("i must lie in [n]");
  return FiInstance(j.at("n").get<std::uint32_t>(), i - 1);
}

std::string_view family_name(const AnyInstance& inst) {
  static constexpr std::string_view names[] = {"mono", "bb15", "unate", "onelevel", "fi"};
  return names[inst.index()];
}

const BooleanFunction& as_function(const AnyInstance& inst) {
  return std::visit([](const auto& v) -> const BooleanFunction& { return v; }, inst);
}

AnyInstance sample_instance(std::string_view family, std::uint32_t n, World world, std::uint64_t seed,
                            Storage storage) {
  if (family == "mono") return MonoInstance::sample(n, world, seed, storage);
  if (family == "bb15") return BB15Instance::sample(n, world, seed);
  if (family == "unate") return UnateInstance::sample(n, world, seed);
  if (family == "onelevel") return OneLevelInstance::sample(n, world, seed);
  if (family == "fi") {
    RngStream rng(seed, "fi.i");
    if (n == 0) throw InvalidArgument("n must be positive");
    return FiInstance(n, static_cast<std::uint32_t>(rng.below(n)));
  }
  throw InvalidArgument("unknown family '" + std::string(family) + "'");
}

Json instance_to_json(const AnyInstance& inst) {
  return std::visit([](const auto& v) { return InstanceCodec::encode(v); }, inst);
}

AnyInstance instance_from_json(const Json& j) {
  try {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "mono") return InstanceCodec::decode_mono(j);
    if (fam == "bb15") return InstanceCodec::decode_bb15(j);
    if (fam == "unate") return InstanceCodec::decode_unate(j);
    if (fam == "onelevel") return InstanceCodec::decode_onelevel(j);
    if (fam == "fi") return InstanceCodec::decode_fi(j);
    throw InvalidArgument("unknown family '" + fam + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed instance: ") + e.what());
  }
}

}  // namespace ptlab
