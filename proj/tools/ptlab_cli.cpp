// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptlab/ptlab.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

void check(ptlab_status s) {
  if (s == PTLAB_OK) return;
  throw Failure{s == PTLAB_VERIFY_FAILED ? kExitVerify : kExitUsage, ptlab_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ptlab_string_free(s);
  return out;
}

using InstancePtr = std::unique_ptr<ptlab_instance, decltype(&ptlab_instance_free)>;

InstancePtr load(const std::string& path) {
  ptlab_instance* h = nullptr;
  check(ptlab_instance_load(path.c_str(), &h));
  return {h, ptlab_instance_free};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitUsage, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Failure{kExitUsage, "cannot write " + out};
  f << text;
}

struct Options {
  std::string family = "mono";
  std::uint32_t n = 16;
  std::string world = "yes";
  std::uint64_t seed = 0;
  std::string storage = "explicit";
  std::string out;
  std::string instance;
  std::vector<std::string> xs;
  std::uint64_t random = 0;
  bool signature = false;
  std::string format = "csv";
  std::string attack = "bb15";
  std::uint64_t budget = 0;
  std::string tester;
  std::uint64_t samples = 0;
  bool exhaustive = false;
  std::string config;
  unsigned threads = 0;
  double alpha = 0;
  bool list = false;
};

int run_sample(const Options& o) {
  ptlab_instance* h = nullptr;
  check(ptlab_instance_sample(o.family.c_str(), o.n, o.world.c_str(), o.seed, o.storage.c_str(), &h));
  InstancePtr inst(h, ptlab_instance_free);
  char* s = nullptr;
  check(ptlab_instance_to_json(inst.get(), &s));
  emit(take(s), o.out);
  return kExitOk;
}

int run_eval(const Options& o) {
  auto inst = load(o.instance);
  std::vector<std::string> xs = o.xs;
  if (o.random) {
    char* s = nullptr;
    check(ptlab_instance_random_points(inst.get(), o.random, o.seed, o.signature ? 1 : 0, &s));
    for (const auto& x : Json::parse(take(s))) xs.push_back(x.get<std::string>());
  }
  if (xs.empty()) throw Failure{kExitUsage, "eval needs --x or --random"};
  std::ostringstream os;
  if (o.format == "csv") os << (o.signature ? "x,value,signature_value,signature\n" : "x,value\n");
  for (const auto& x : xs) {
    if (o.signature) {
      char* s = nullptr;
      check(ptlab_instance_signature_json(inst.get(), x.c_str(), &s));
      const Json rec = Json::parse(take(s));
      if (o.format == "csv") {
        std::string sig = rec.at("signature").dump();
        os << x << ',' << int(rec.at("eval").get<bool>()) << ',' << int(rec.at("value").get<bool>()) << ",\"";
        for (char c : sig) os << (c == '"' ? std::string("\"\"") : std::string(1, c));
        os << "\"\n";
      } else {
        os << rec.dump() << '\n';
      }
    } else {
      int v = 0;
      check(ptlab_instance_eval_hex(inst.get(), x.c_str(), &v));
      if (o.format == "csv")
        os << x << ',' << v << '\n';
      else
        os << Json{{"x", x}, {"value", v}}.dump() << '\n';
    }
  }
  emit(os.str(), o.out);
  return kExitOk;
}

int run_attack(const Options& o) {
  auto inst = load(o.instance);
  Json tester = o.tester.empty() ? Json::object() : Json::parse(slurp(o.tester));
  if (o.budget) tester["q"] = o.budget;
  if (o.seed) tester["seed"] = o.seed;
  char* s = nullptr;
  check(ptlab_attack(inst.get(), o.attack.c_str(), tester.dump().c_str(), &s));
  emit(Json::parse(take(s)).dump(2) + "\n", o.out);
  return kExitOk;
}

int run_distance(const Options& o) {
  auto inst = load(o.instance);
  Json opt{{"seed", o.seed}};
  if (o.samples) opt["samples"] = o.samples;
  if (o.exhaustive) opt["exhaustive"] = true;
  char* s = nullptr;
  check(ptlab_distance_json(inst.get(), opt.dump().c_str(), &s));
  emit(Json::parse(take(s)).dump(2) + "\n", o.out);
  return kExitOk;
}

Json load_config(const Options& o) {
  Json cfg = Json::parse(slurp(o.config));
  if (!o.out.empty()) cfg["out"] = o.out;
  if (o.threads) cfg["threads"] = o.threads;
  if (o.samples) cfg["samples"] = o.samples;
  if (o.alpha > 0) cfg["params"]["alpha"] = o.alpha;
  return cfg;
}

int run_experiment(const Options& o) {
  if (o.list) {
    char* s = nullptr;
    check(ptlab_experiment_names(&s));
    std::string names = take(s);
    for (char& c : names)
      if (c == ',') c = '\n';
    std::cout << names << '\n';
    return kExitOk;
  }
  if (o.config.empty()) throw Failure{kExitUsage, "experiment needs a config file"};
  char* s = nullptr;
  check(ptlab_experiment_run(load_config(o).dump().c_str(), &s));
  const Json res = Json::parse(take(s));
  if (o.format == "json")
    std::cout << res.at("rows").dump(2) << '\n';
  else
    std::cout << res.at("csv").get<std::string>();
  std::cerr << "results: " << res.at("directory").get<std::string>() << '\n';
  return kExitOk;
}

int run_verify(const Options& o) {
  char* s = nullptr;
  const ptlab_status st = ptlab_experiment_verify(load_config(o).dump().c_str(), &s);
  if (st != PTLAB_OK && st != PTLAB_VERIFY_FAILED) check(st);
  const Json rep = Json::parse(take(s));
  if (o.format == "json")
    std::cout << rep.dump(2) << '\n';
  else
    for (const auto& line : rep.at("lines")) std::cout << line.get<std::string>() << '\n';
  std::cout << (rep.at("ok").get<bool>() ? "verify: ok" : "verify: FAILED") << " (config " << rep.at("config_hash").get<std::string>()
            << ")\n";
  return rep.at("ok").get<bool>() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptlab: hard instances and attacks for monotonicity and unateness testing"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "Sample an instance and write it as JSON");
  sample->add_option("--family", o.family, "mono, bb15, unate, onelevel or fi")->capture_default_str();
  sample->add_option("--n", o.n, "Dimension")->required();
  sample->add_option("--world", o.world, "yes or no")->capture_default_str();
  sample->add_option("--seed", o.seed)->capture_default_str();
  sample->add_option("--storage", o.storage, "explicit or lazy")->capture_default_str();
  sample->add_option("--out", o.out, "Output file (stdout when omitted)");

  auto* eval = app.add_subcommand("eval", "Evaluate an instance on queries");
  eval->add_option("instance", o.instance)->required();
  eval->add_option("--x", o.xs, "Query as hex; repeatable");
  eval->add_option("--random", o.random, "Number of random queries (middle layers with --signature)");
  eval->add_option("--seed", o.seed, "Seed for --random");
  eval->add_flag("--signature", o.signature, "Also print the signature record");
  eval->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  eval->add_option("--out", o.out);

  auto* attack = app.add_subcommand("attack", "Run a tester against an instance");
  attack->add_option("instance", o.instance)->required();
  attack->add_option("--attack", o.attack, "bb15, two_level or edge")->capture_default_str();
  attack->add_option("--budget", o.budget, "Query budget");
  attack->add_option("--seed", o.seed, "Tester seed");
  attack->add_option("--tester", o.tester, "JSON file with tester fields");
  attack->add_option("--out", o.out);

  auto* distance = app.add_subcommand("distance", "Distances to monotone and unate");
  distance->add_option("instance", o.instance)->required();
  distance->add_option("--samples", o.samples, "Monte-Carlo samples");
  distance->add_option("--seed", o.seed);
  distance->add_flag("--exhaustive", o.exhaustive, "Enumerate the middle layers instead of sampling");
  distance->add_option("--out", o.out);

  auto* experiment = app.add_subcommand("experiment", "Run a named experiment from a config file");
  experiment->add_option("config", o.config);
  experiment->add_flag("--list", o.list, "List experiment names");
  experiment->add_option("--out", o.out, "Results root (overrides the config)");
  experiment->add_option("--threads", o.threads);
  experiment->add_option("--samples", o.samples);
  experiment->add_option("--alpha", o.alpha, "Classifier alpha (stored in params)");
  experiment->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "Rerun an experiment and check its expectations");
  verify->add_option("config", o.config)->required();
  verify->add_option("--out", o.out, "Results root holding stored rows");
  verify->add_option("--threads", o.threads);
  verify->add_option("--samples", o.samples);
  verify->add_option("--alpha", o.alpha);
  verify->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) return run_sample(o);
    if (*eval) return run_eval(o);
    if (*attack) return run_attack(o);
    if (*distance) return run_distance(o);
    if (*experiment) return run_experiment(o);
    if (*verify) return run_verify(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
