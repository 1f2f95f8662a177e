#include "ptlab/ptlab.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "ptlab/bench/experiment.hpp"
#include "ptlab/core/error.hpp"
#include "ptlab/core/rng.hpp"
#include "ptlab/distance/distance.hpp"
#include "ptlab/families/serialize.hpp"
#include "ptlab/families/truth_table.hpp"
#include "ptlab/sigoracle/signature.hpp"
#include "ptlab/testers/attacks.hpp"

struct ptlab_instance {
  ptlab::AnyInstance inst;
  std::string family;
};

namespace {

using namespace ptlab;

thread_local std::string last_error;

ptlab_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return PTLAB_INVALID_ARGUMENT;
    case ErrorCode::resource_limit: return PTLAB_RESOURCE_LIMIT;
    case ErrorCode::contract_violation: return PTLAB_CONTRACT_VIOLATION;
    case ErrorCode::unsupported: return PTLAB_UNSUPPORTED;
    case ErrorCode::io: return PTLAB_IO;
  }
  return PTLAB_INTERNAL;
}

template <class F>
ptlab_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return PTLAB_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PTLAB_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PTLAB_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw ResourceLimit("out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ptlab_instance* wrap(AnyInstance inst) {
  const std::string fam(family_name(inst));
  return new ptlab_instance{std::move(inst), fam};
}

BitString parse_point(const ptlab_instance* h, const char* hex) {
  require(hex, "x");
  return BitString::from_hex(as_function(h->inst).dimension(), hex);
}

bool in_middle(const AnyInstance& inst, const BitString& x) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MonoInstance>)
          return v.weight_class(x) == WeightClass::middle;
        else if constexpr (std::is_same_v<T, UnateInstance>)
          return v.band_class_deoriented(x ^ v.orientation()) == WeightClass::middle;
        else if constexpr (std::is_same_v<T, FiInstance>)
          return true;
        else
          return v.band().classify(x.weight()) == WeightClass::middle;
      },
      inst);
}

Json signature_record(const AnyInstance& inst, const BitString& x) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, MonoInstance>) {
          const auto sig = mono_full_signature(v, x);
          return {{"signature", to_json(sig)}, {"value", value_from_mono_signature(WeightClass::middle, sig)}};
        } else if constexpr (std::is_same_v<T, UnateInstance>) {
          const auto sig = unate_signature(v, x);
          return {{"signature", to_json(sig)}, {"value", value_from_unate_signature(WeightClass::middle, sig)}};
        } else if constexpr (std::is_same_v<T, OneLevelInstance>) {
          const auto sig = onelevel_signature(v, x);
          return {{"signature", to_json(sig)}, {"value", value_from_unate_signature(WeightClass::middle, sig)}};
        } else {
          throw Unsupported("family " + std::string(family_name(AnyInstance(v))) + " has no signature oracle");
        }
      },
      inst);
}

Json rational_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}, {"value", r.value()}}; }

Json distance_report(const ptlab_instance* h, const Json& opt) {
  const BooleanFunction& f = as_function(h->inst);
  const auto n = static_cast<std::uint32_t>(f.dimension());
  const std::uint64_t samples = opt.value("samples", std::uint64_t{100000});
  const std::uint64_t seed = opt.value("seed", std::uint64_t{0});
  const bool exhaustive = opt.value("exhaustive", n <= 16);
  Json out{{"family", h->family}, {"n", n}};
  Json skipped = Json::array();

  if (n <= 14) {
    const auto t = truth_table(f);
    out["exact_dist_mono"] = rational_json(exact_dist_mono(t));
  } else {
    skipped.push_back("exact_dist_mono needs n <= 14");
  }
  if (h->family == "unate" || h->family == "fi") {
    if (n <= 10)
      out["exact_dist_unate"] = rational_json(exact_dist_unate(truth_table(f)));
    else
      skipped.push_back("exact_dist_unate needs n <= 10");
    if (n <= 24)
      out["unate_dist_lower_bound"] = rational_json(unate_dist_lower_bound(truth_table(f, 24)));
    else
      skipped.push_back("unate_dist_lower_bound needs n <= 24");
  }
  if (const auto* m = std::get_if<MonoInstance>(&h->inst); m && m->world() == World::no)
    out["pr_xprime"] = estimate_pr_xprime(*m, samples, seed, exhaustive && n <= 20 ? EstimateMode::exhaustive
                                                                                    : EstimateMode::monte_carlo)
                           .to_json();
  if (const auto* u = std::get_if<UnateInstance>(&h->inst); u && u->world() == World::no)
    out["unate_family"] = unate_no_family_stats(*u, samples, seed, exhaustive && n <= 20 ? EstimateMode::exhaustive
                                                                                         : EstimateMode::monte_carlo)
                              .to_json();
  if (!skipped.empty()) out["skipped"] = skipped;
  return out;
}

std::string result_dir(const ExperimentConfig& c) {
  return (std::filesystem::path(c.out) / c.experiment / c.hash()).string();
}

}  // namespace

extern "C" {

const char* ptlab_last_error(void) { return last_error.c_str(); }

const char* ptlab_status_name(ptlab_status s) {
  switch (s) {
    case PTLAB_OK: return "ok";
    case PTLAB_INVALID_ARGUMENT: return "invalid_argument";
    case PTLAB_RESOURCE_LIMIT: return "resource_limit";
    case PTLAB_CONTRACT_VIOLATION: return "contract_violation";
    case PTLAB_UNSUPPORTED: return "unsupported";
    case PTLAB_IO: return "io";
    case PTLAB_VERIFY_FAILED: return "verify_failed";
    case PTLAB_INTERNAL: return "internal";
  }
  return "unknown";
}

void ptlab_string_free(char* s) { std::free(s); }

ptlab_status ptlab_instance_sample(const char* family, uint32_t n, const char* world, uint64_t seed,
                                   const char* storage, ptlab_instance** out) {
  return guarded([&] {
    require(family, "family");
    require(world, "world");
    require(out, "out");
    const Storage st = storage ? parse_storage(storage) : Storage::eager;
    *out = wrap(sample_instance(family, n, parse_world(world), seed, st));
    return PTLAB_OK;
  });
}

ptlab_status ptlab_instance_from_json(const char* json, ptlab_instance** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = wrap(instance_from_json(Json::parse(json)));
    return PTLAB_OK;
  });
}

ptlab_status ptlab_instance_load(const char* path, ptlab_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(instance_from_json(Json::parse(read_text_file(path))));
    return PTLAB_OK;
  });
}

ptlab_status ptlab_instance_to_json(const ptlab_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup(instance_to_json(inst->inst).dump(2) + "\n");
    return PTLAB_OK;
  });
}

void ptlab_instance_free(ptlab_instance* inst) { delete inst; }

uint32_t ptlab_instance_dimension(const ptlab_instance* inst) {
  return inst ? static_cast<uint32_t>(as_function(inst->inst).dimension()) : 0;
}

const char* ptlab_instance_family(const ptlab_instance* inst) { return inst ? inst->family.c_str() : ""; }

ptlab_status ptlab_instance_eval_hex(const ptlab_instance* inst, const char* hex, int* value) {
  return guarded([&] {
    require(inst, "instance");
    require(value, "value");
    *value = as_function(inst->inst).eval(parse_point(inst, hex)) ? 1 : 0;
    return PTLAB_OK;
  });
}

ptlab_status ptlab_instance_signature_json(const ptlab_instance* inst, const char* hex, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    const BitString x = parse_point(inst, hex);
    Json rec = signature_record(inst->inst, x);
    rec["x"] = x.to_hex();
    rec["eval"] = as_function(inst->inst).eval(x);
    *out = dup(rec.dump());
    return PTLAB_OK;
  });
}

ptlab_status ptlab_instance_random_points(const ptlab_instance* inst, uint64_t m, uint64_t seed, int middle_only,
                                          char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    const std::size_t n = as_function(inst->inst).dimension();
    RngStream rng(seed, "cli.random");
    Json pts = Json::array();
    std::uint64_t draws = 0;
    while (pts.size() < m) {
      if (++draws > 1000 * (m + 1)) throw ResourceLimit("could not draw enough middle-layer points");
      const BitString x = random_bitstring(rng, n);
      if (!middle_only || in_middle(inst->inst, x)) pts.push_back(x.to_hex());
    }
    *out = dup(pts.dump());
    return PTLAB_OK;
  });
}

ptlab_status ptlab_attack(const ptlab_instance* inst, const char* attack, const char* tester_json,
                          char** verdict_json) {
  return guarded([&] {
    require(inst, "instance");
    require(attack, "attack");
    require(verdict_json, "out");
    const TesterConfig cfg = TesterConfig::from_json(tester_json ? Json::parse(tester_json) : Json::object());
    const BooleanFunction& f = as_function(inst->inst);
    const auto n = static_cast<std::uint32_t>(f.dimension());
    const std::string a = attack;
    Verdict v;
    if (a == "bb15")
      v = bb15_attack(f, n, cfg);
    else if (a == "two_level")
      v = two_level_attack(f, n, cfg);
    else if (a == "edge")
      v = edge_tester(f, cfg);
    else
      throw InvalidArgument("unknown attack '" + a + "' (expected bb15, two_level or edge)");
    Json j = v.to_json();
    j["attack"] = a;
    j["family"] = inst->family;
    j["witness_verified"] = v.witness ? verify_witness(*v.witness, f) : false;
    *verdict_json = dup(j.dump());
    return PTLAB_OK;
  });
}

ptlab_status ptlab_distance_json(const ptlab_instance* inst, const char* options_json, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup(distance_report(inst, options_json ? Json::parse(options_json) : Json::object()).dump());
    return PTLAB_OK;
  });
}

ptlab_status ptlab_experiment_names(char** out) {
  return guarded([&] {
    require(out, "out");
    std::string s;
    for (const auto& name : experiment_names()) s += (s.empty() ? "" : ",") + name;
    *out = dup(s);
    return PTLAB_OK;
  });
}

ptlab_status ptlab_experiment_run(const char* config_json, char** out) {
  return guarded([&] {
    require(config_json, "config");
    require(out, "out");
    const auto cfg = ExperimentConfig::from_json(Json::parse(config_json));
    const auto res = run_experiment(cfg, true);
    Json rows = Json::array();
    for (const auto& r : res.rows)
      rows.push_back({{"seed", r.seed}, {"n", r.n}, {"world", r.world}, {"metric", r.metric}, {"value", r.value},
                      {"ci", r.ci}, {"queries", r.queries}, {"wall_ms", r.wall_ms}, {"error", r.error}});
    *out = dup(Json{{"directory", res.directory},
                    {"config_hash", cfg.hash()},
                    {"csv", rows_to_csv(res.rows)},
                    {"rows", rows}}
                   .dump());
    return PTLAB_OK;
  });
}

ptlab_status ptlab_experiment_verify(const char* config_json, char** out) {
  return guarded([&] {
    require(config_json, "config");
    require(out, "out");
    const auto cfg = ExperimentConfig::from_json(Json::parse(config_json));
    auto res = run_experiment(cfg, false);
    res.directory = result_dir(cfg);
    const auto rep = verify_experiment(res);
    *out = dup(Json{{"ok", rep.ok}, {"lines", rep.lines}, {"config_hash", cfg.hash()}}.dump());
    if (!rep.ok) last_error = "verification failed";
    return rep.ok ? PTLAB_OK : PTLAB_VERIFY_FAILED;
  });
}

}  // extern "C"
