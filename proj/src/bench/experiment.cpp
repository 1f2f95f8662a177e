#include "ptlab/bench/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

#include "ptlab/bench/reference.hpp"
#include "ptlab/core/error.hpp"
#include "ptlab/core/math.hpp"
#include "ptlab/core/rng.hpp"
#include "ptlab/distance/distance.hpp"
#include "ptlab/families/bb15.hpp"
#include "ptlab/families/truth_table.hpp"
#include "ptlab/families/serialize.hpp"
#include "ptlab/testers/attacks.hpp"
#include "ptlab/testers/unate_violation.hpp"

namespace ptlab {

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw InvalidArgument("experiment config must be a JSON object");
  c.experiment = j.at("experiment").get<std::string>();
  c.family = j.value("family", c.family);
  const Json& n = j.at("n");
  if (n.is_array())
    c.n = n.get<std::vector<std::uint32_t>>();
  else
    c.n = {n.get<std::uint32_t>()};
  if (j.contains("worlds")) {
    c.worlds.clear();
    for (const auto& w : j.at("worlds")) c.worlds.push_back(parse_world(w.get<std::string>()));
  }
  c.seed_start = j.value("seed_start", c.seed_start);
  c.seeds = j.value("seeds", c.seeds);
  c.samples = j.value("samples", c.samples);
  c.tester = j.value("tester", c.tester);
  c.params = j.value("params", c.params);
  c.expect = j.value("expect", c.expect);
  c.out = j.value("out", c.out);
  c.threads = j.value("threads", c.threads);
  if (c.n.empty() || c.worlds.empty()) throw InvalidArgument("n and worlds must be nonempty");
  if (c.threads == 0) c.threads = 1;
  return c;
}

Json ExperimentConfig::canonical() const {
  Json worlds_json = Json::array();
  for (auto w : worlds) worlds_json.push_back(std::string(to_string(w)));
  return Json{{"experiment", experiment}, {"family", family},  {"n", n},
              {"worlds", worlds_json},    {"seed_start", seed_start}, {"seeds", seeds},
              {"samples", samples},       {"tester", tester},  {"params", params},
              {"expect", expect},         {"schema_version", kResultSchemaVersion}};
}

Json ExperimentConfig::to_json() const {
  Json j = canonical();
  j.erase("schema_version");
  j["out"] = out;
  j["threads"] = threads;
  return j;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical().dump())));
  return buf;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_timing) {
  std::ostringstream os;
  os << "experiment,config_hash,seed,n,world,metric,value,ci,queries";
  if (with_timing) os << ",wall_ms";
  os << ",error\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.config_hash << ',' << r.seed << ',' << r.n << ',' << r.world << ',' << r.metric
       << ',' << fmt(r.value) << ',' << fmt(r.ci) << ',' << r.queries;
    if (with_timing) os << ',' << fmt(r.wall_ms);
    os << ',' << csv_escape(r.error) << '\n';
  }
  return os.str();
}

namespace {

struct Task {
  std::uint32_t n;
  World world;
  std::uint64_t seed;
};

struct Metric {
  std::string name;
  double value = 0;
  double ci = 0;
  std::uint64_t queries = 0;
};

using TaskFn = std::function<std::vector<Metric>(const ExperimentConfig&, const Task&)>;
using AggregateFn = std::function<std::vector<ResultRow>(const ExperimentConfig&, const std::vector<ResultRow>&)>;

class FunctionView : public BooleanFunction {
 public:
  FunctionView(std::size_t n, std::function<bool(const BitString&)> f) : n_(n), f_(std::move(f)) {}
  std::size_t dimension() const override { return n_; }
  bool eval(const BitString& x) const override { return f_(x); }

 private:
  std::size_t n_;
  std::function<bool(const BitString&)> f_;
};

template <class InBand>
BitString random_in_band(RngStream& rng, std::uint32_t n, InBand&& in_band) {
  for (int tries = 0; tries < 100000; ++tries) {
    BitString x = random_bitstring(rng, n);
    if (in_band(x)) return x;
  }
  throw ResourceLimit("could not sample a middle-layer string");
}

Storage storage_param(const ExperimentConfig& c) { return parse_storage(c.params.value("storage", "explicit")); }

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// --- experiments -----------------------------------------------------------

std::vector<Metric> monotone_check(const ExperimentConfig& c, const Task& t) {
  std::uint64_t violations = 0;
  if (c.family == "unate") {
    const auto inst = UnateInstance::sample(t.n, t.world, t.seed);
    violations = count_violating_edges(
        truth_table(FunctionView(t.n, [&](const BitString& z) { return inst.eval_deoriented(z); })));
  } else {
    const AnyInstance inst = sample_instance(c.family, t.n, t.world, t.seed, storage_param(c));
    violations = count_violating_edges(truth_table(as_function(inst)));
  }
  return {{"violating_edges", double(violations)}};
}

std::vector<Metric> signature_soundness(const ExperimentConfig& c, const Task& t) {
  const std::uint64_t queries = c.params.value("queries", 1000);
  RngStream rng(t.seed, "bench.signature", {t.n});
  std::uint64_t mismatches = 0;
  if (c.family == "mono") {
    const auto inst = MonoInstance::sample(t.n, t.world, t.seed, storage_param(c));
    for (std::uint64_t q = 0; q < queries; ++q) {
      const auto x = random_in_band(rng, t.n, [&](const BitString& y) { return inst.weight_class(y) == WeightClass::middle; });
      mismatches += value_from_mono_signature(WeightClass::middle, mono_full_signature(inst, x)) != inst.eval(x);
    }
  } else if (c.family == "unate") {
    const auto inst = UnateInstance::sample(t.n, t.world, t.seed);
    for (std::uint64_t q = 0; q < queries; ++q) {
      const auto x = random_in_band(rng, t.n, [&](const BitString& y) {
        return inst.band_class_deoriented(y ^ inst.orientation()) == WeightClass::middle;
      });
      mismatches += value_from_unate_signature(WeightClass::middle, unate_signature(inst, x)) != inst.eval(x);
    }
  } else if (c.family == "onelevel") {
    const auto inst = OneLevelInstance::sample(t.n, t.world, t.seed);
    for (std::uint64_t q = 0; q < queries; ++q) {
      const auto x =
          random_in_band(rng, t.n, [&](const BitString& y) { return inst.band().classify(y.weight()) == WeightClass::middle; });
      mismatches += value_from_unate_signature(WeightClass::middle, onelevel_signature(inst, x)) != inst.eval(x);
    }
  } else {
    throw InvalidArgument("signature-soundness supports mono, unate and onelevel");
  }
  return {{"mismatches", double(mismatches)}, {"checked", double(queries)}};
}

std::vector<Metric> transcript_axioms(const ExperimentConfig& c, const Task& t) {
  const std::uint64_t queries = c.params.value("queries", 30);
  const auto inst = MonoInstance::sample(t.n, t.world, t.seed, storage_param(c));
  RngStream rng(t.seed, "bench.axioms", {t.n});
  MonoTranscript tr(t.n);
  for (std::uint64_t q = 0; q < queries; ++q) {
    const auto x = random_in_band(rng, t.n, [&](const BitString& y) { return inst.weight_class(y) == WeightClass::middle; });
    tr.extend(x, mono_full_signature(inst, x));
  }
  const auto failures = tuple_axiom_failures(tr, &inst);
  std::size_t cells = 0;
  for (const auto& [i, cell] : tr.terms()) cells += cell.clauses.size();
  return {{"failures", double(failures.size())}, {"cells", double(cells)}};
}

bool keeps_cells_consistent(const MonoTranscript& t, const FullSignature& sig) {
  if (sig.sigma.kind != Sigma::Kind::unique) return true;
  auto it = t.terms().find(sig.sigma.i);
  if (it == t.terms().end()) return true;
  auto check = [&](std::uint64_t j, bool rho) {
    auto ct = it->second.clauses.find(j);
    return ct == it->second.clauses.end() || ct->second.rho.front() == rho;
  };
  if (sig.tau.kind == Tau::Kind::unique_false) return check(sig.tau.j, *sig.a);
  if (sig.tau.kind == Tau::Kind::multi_false) return check(sig.tau.j, *sig.a) && check(sig.tau.j2, *sig.b);
  return true;
}

}  // namespace

// Toy unateness instance with r = 0 and a chosen number of terms.
UnateInstance toy_unate_instance(std::uint32_t n, std::uint64_t num_terms, World world, std::uint64_t seed) {
  RngStream rm(seed, "toy.unate.M");
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t k = 0; k < n; ++k) all[k] = k;
  IndexSet m(n, sample_without_replacement(rm, all, n / 2));
  const auto mbar = IndexSet::from_mask(~m.mask()).members();
  const double p = 1.0 / std::sqrt(double(n));
  std::vector<std::vector<std::uint32_t>> terms(num_terms);
  std::vector<Dictator> dicts(num_terms);
  for (std::uint64_t i = 0; i < num_terms; ++i) {
    RngStream rt(seed, "toy.unate.T", {i});
    for (auto k : m.members())
      if (rt.bernoulli(p)) terms[i].push_back(k);
    if (terms[i].empty()) terms[i].push_back(m.members()[rt.below(m.size())]);
    RngStream rh(seed, "toy.unate.H", {i});
    dicts[i].index = mbar[rh.below(mbar.size())];
    dicts[i].positive = world == World::yes || rh.coin();
  }
  RngStream rs(seed, "toy.unate.s");
  std::vector<bool> s(n / 2);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = rs.coin();
  return UnateInstance::from_parts(n, world, m, terms, dicts, std::vector<bool>(n / 2, false), s);
}

namespace {

std::vector<Metric> likelihood_equivalence(const ExperimentConfig& c, const Task& t) {
  const std::uint64_t queries = c.params.value("queries", 30);
  const std::uint64_t num_terms = c.params.value("num_terms", 4);
  RngStream rng(t.seed, "bench.likelihood", {t.n});
  if (c.family == "mono") {
    const auto inst = MonoInstance::sample_shaped(t.n, num_terms, static_cast<std::uint32_t>(isqrt(t.n)), t.world,
                                                  t.seed, Storage::eager);
    MonoTranscript tr(t.n);
    for (std::uint64_t q = 0; q < queries; ++q) {
      const auto x = random_in_band(rng, t.n, [&](const BitString& y) { return inst.weight_class(y) == WeightClass::middle; });
      const auto sig = mono_full_signature(inst, x);
      if (keeps_cells_consistent(tr, sig)) tr.extend(x, sig);
    }
    const auto closed = mono_leaf_likelihood(inst, tr);
    const auto ref = enumerate_mono_leaf(inst, tr);
    return {{"rel_err_yes", rel_err(closed.p_yes, ref.p_yes)},
            {"rel_err_no", rel_err(closed.p_no, ref.p_no)},
            {"p_yes", closed.p_yes},
            {"p_no", closed.p_no},
            {"queries_kept", double(tr.size())}};
  }
  if (c.family == "unate") {
    const auto inst = toy_unate_instance(t.n, num_terms, t.world, t.seed);
    ClassifierConfig cc;
    auto tr = UnateTranscript::for_instance(inst, cc);
    const auto reveal = special_variables_of(inst);
    for (std::uint64_t q = 0; q < queries; ++q) {
      const auto x = random_in_band(rng, t.n, [&](const BitString& y) { return inst.band_class_deoriented(y) == WeightClass::middle; });
      tr.extend(x, unate_signature(inst, x), reveal);
    }
    const auto closed = unate_transcript_likelihood(tr, LikelihoodMode::exhaustive_small);
    const auto ref = enumerate_unate_leaf(inst, tr);
    return {{"rel_err_yes", rel_err(closed.p_yes, ref.p_yes)},
            {"rel_err_no", rel_err(closed.p_no, ref.p_no)},
            {"p_yes", closed.p_yes},
            {"p_no", closed.p_no},
            {"relevant_coordinates", double(closed.relevant_coordinates)}};
  }
  throw InvalidArgument("likelihood-equivalence supports mono and unate");
}

std::vector<Metric> farness_estimate(const ExperimentConfig& c, const Task& t) {
  const std::uint64_t samples = c.samples ? c.samples : 100000;
  const auto inst = MonoInstance::sample(t.n, World::no, t.seed, storage_param(c));
  const auto exact = estimate_pr_xprime(inst, 0, t.seed, EstimateMode::exhaustive);
  const auto mc = estimate_pr_xprime(inst, samples, t.seed);
  const double sigma = std::sqrt(exact.estimate * (1.0 - exact.estimate) / double(samples));
  const double z = sigma > 0 ? std::abs(mc.estimate - exact.estimate) / sigma : (mc.estimate == exact.estimate ? 0 : 1e9);
  return {{"exhaustive", exact.estimate}, {"monte_carlo", mc.estimate, mc.ci}, {"z", z}};
}

std::vector<Metric> farness_consistency(const ExperimentConfig& c, const Task& t) {
  const std::uint64_t num_terms = c.params.value("num_terms", 16);
  const std::uint32_t term_len = c.params.value("term_len", 4);
  const auto inst = MonoInstance::sample_shaped(t.n, num_terms, term_len, World::no, t.seed, Storage::eager);
  const auto family = xprime_family(inst);
  const Rational frac{family.size(), std::uint64_t{1} << t.n};
  const Rational dist = exact_dist_mono(truth_table(inst));
  return {{"xprime_fraction", frac.value()},
          {"exact_dist", dist.value()},
          {"holds", double(frac <= dist)},
          {"dist_positive", double(dist.num > 0)}};
}

std::vector<Metric> fi_farness(const ExperimentConfig&, const Task& t) {
  if (t.seed >= t.n) throw InvalidArgument("fi-farness uses the seed as the coordinate i and needs seed < n");
  const auto table = truth_table(FiInstance(t.n, static_cast<std::uint32_t>(t.seed)));
  const Rational eighth{1, 8};
  const Rational exact = exact_dist_unate(table), lb = unate_dist_lower_bound(table);
  return {{"exact_dist_unate", exact.value()},
          {"lower_bound", lb.value()},
          {"exact_at_least_eighth", double(eighth <= exact)},
          {"lower_bound_is_eighth", double(lb == eighth)}};
}

BB15Instance planted_bb15(std::uint32_t n, std::uint64_t seed) {
  RngStream rng(seed, "bench.planted");
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t k = 0; k < n; ++k) all[k] = k;
  auto term = sample_without_replacement(rng, all, isqrt(n));
  const std::uint32_t ell = term[rng.below(term.size())];
  return BB15Instance::from_parts(n, World::no, {term}, IndexSet(n, {ell}));
}

std::vector<Metric> attack_rates(const ExperimentConfig& c, const Task& t) {
  TesterConfig tc = TesterConfig::from_json(c.tester);
  tc.seed += t.seed;
  const std::string attack = c.params.value("attack", "bb15");
  const std::string source = c.params.value("instance", "sampled");
  std::optional<AnyInstance> inst;
  if (source == "planted")
    inst = planted_bb15(t.n, t.seed);
  else
    inst = sample_instance(c.family, t.n, t.world, t.seed, storage_param(c));
  const BooleanFunction& f = as_function(*inst);
  Verdict v;
  if (attack == "bb15")
    v = bb15_attack(f, t.n, tc);
  else if (attack == "two_level")
    v = two_level_attack(f, t.n, tc);
  else if (attack == "edge")
    v = edge_tester(f, tc);
  else
    throw InvalidArgument("unknown attack " + attack);
  const bool witness_ok = !v.rejected() || (v.witness && verify_witness(*v.witness, f));
  return {{"reject", double(v.rejected()), 0, v.queries_used}, {"witness_failures", double(!witness_ok), 0, v.queries_used}};
}

std::vector<Metric> orientation_search(const ExperimentConfig& c, const Task& t) {
  const double lg = log2n(t.n);
  const std::uint64_t size = c.params.value("size", static_cast<std::uint64_t>(std::floor(t.n / (lg * lg))));
  const std::uint64_t max_tries = c.params.value("max_tries", 200);
  RngStream rq(t.seed, "bench.orientation.Q", {t.n});
  std::vector<BitString> q;
  for (std::uint64_t k = 0; k < size; ++k) q.push_back(random_bitstring(rq, t.n));
  RngStream rr(t.seed, "bench.orientation.r", {t.n});
  const auto res = find_good_orientation(q, t.n, rr, max_tries);
  const bool passes = res.r && check_orientation(q, *res.r, t.n);
  return {{"success", double(res.r.has_value())}, {"tries", double(res.tries)}, {"passes_check", double(passes || !res.r)}};
}

std::vector<Metric> classifier_sanity(const ExperimentConfig& c, const Task& t) {
  const std::uint64_t queries = c.params.value("queries", 30);
  ClassifierConfig cc;
  cc.alpha = c.params.value("alpha", 4.0);
  const auto inst = MonoInstance::sample(t.n, t.world, t.seed, storage_param(c));
  RngStream rng(t.seed, "bench.classifier", {t.n});
  MonoTranscript tr(t.n);
  std::uint64_t bad = 0, e3 = 0, e3_without_flip = 0;
  for (std::uint64_t q = 0; q < queries; ++q) {
    const auto x = random_in_band(rng, t.n, [&](const BitString& y) { return inst.weight_class(y) == WeightClass::middle; });
    const auto sig = mono_full_signature(inst, x);
    const auto cls = classify_mono_step(tr, x, sig, cc);
    if (cls.fired & 4u) {
      ++e3;
      if (keeps_cells_consistent(tr, sig)) ++e3_without_flip;
    }
    if (cls.bad()) ++bad;
    tr.extend(x, sig);
  }
  return {{"bad_steps", double(bad)}, {"e3_fired", double(e3)}, {"e3_without_flip", double(e3_without_flip)}};
}

// --- aggregation ------------------------------------------------------------

std::vector<ResultRow> mean_of(const ExperimentConfig& c, const std::vector<ResultRow>& rows, const std::string& metric,
                               const std::string& name, bool bernoulli) {
  std::map<std::pair<std::uint32_t, std::string>, std::pair<double, std::uint64_t>> acc;
  for (const auto& r : rows)
    if (r.metric == metric && r.error.empty()) {
      auto& [sum, cnt] = acc[{r.n, r.world}];
      sum += r.value;
      ++cnt;
    }
  std::vector<ResultRow> out;
  for (const auto& [key, v] : acc) {
    ResultRow r;
    r.experiment = c.experiment;
    r.config_hash = c.hash();
    r.seed = -1;
    r.n = key.first;
    r.world = key.second;
    r.metric = name;
    r.value = v.first / double(v.second);
    if (bernoulli) r.ci = 1.96 * std::sqrt(r.value * (1 - r.value) / double(v.second));
    r.queries = v.second;
    out.push_back(r);
  }
  return out;
}

struct ExperimentDef {
  TaskFn task;
  AggregateFn aggregate;
};

const std::map<std::string, ExperimentDef>& registry() {
  static const std::map<std::string, ExperimentDef> r = {
      {"monotone-check", {monotone_check, {}}},
      {"signature-soundness", {signature_soundness, {}}},
      {"transcript-axioms", {transcript_axioms, {}}},
      {"likelihood-equivalence", {likelihood_equivalence, {}}},
      {"farness-estimate",
       {farness_estimate,
        [](const ExperimentConfig& c, const std::vector<ResultRow>& rows) {
          return mean_of(c, rows, "exhaustive", "mean_exhaustive", false);
        }}},
      {"farness-consistency", {farness_consistency, {}}},
      {"fi-farness", {fi_farness, {}}},
      {"attack-rates",
       {attack_rates,
        [](const ExperimentConfig& c, const std::vector<ResultRow>& rows) {
          return mean_of(c, rows, "reject", "reject_rate", true);
        }}},
      {"orientation-search", {orientation_search, {}}},
      {"classifier-sanity", {classifier_sanity, {}}},
  };
  return r;
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write) {
  auto it = registry().find(cfg.experiment);
  if (it == registry().end()) throw InvalidArgument("unknown experiment " + cfg.experiment);
  const ExperimentDef& def = it->second;
  const std::string hash = cfg.hash();

  std::vector<Task> tasks;
  for (auto n : cfg.n)
    for (auto w : cfg.worlds)
      for (std::uint64_t s = 0; s < cfg.seeds; ++s) tasks.push_back({n, w, cfg.seed_start + s});

  std::vector<std::vector<ResultRow>> per_task(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      const Task& t = tasks[k];
      ResultRow base;
      base.experiment = cfg.experiment;
      base.config_hash = hash;
      base.seed = static_cast<std::int64_t>(t.seed);
      base.n = t.n;
      base.world = std::string(to_string(t.world));
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto metrics = def.task(cfg, t);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        for (const auto& m : metrics) {
          ResultRow r = base;
          r.metric = m.name;
          r.value = m.value;
          r.ci = m.ci;
          r.queries = m.queries;
          r.wall_ms = ms;
          per_task[k].push_back(std::move(r));
        }
      } catch (const std::exception& e) {
        ResultRow r = base;
        r.metric = "error";
        r.value = 1;
        r.error = e.what();
        per_task[k].push_back(std::move(r));
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ExperimentResult result;
  result.config = cfg;
  for (auto& rows : per_task)
    for (auto& r : rows) result.rows.push_back(std::move(r));
  if (def.aggregate)
    for (auto& r : def.aggregate(cfg, result.rows)) result.rows.push_back(std::move(r));

  if (write) {
    result.directory = (std::filesystem::path(cfg.out) / cfg.experiment / hash).string();
    write_text_file(result.directory + "/rows.csv", rows_to_csv(result.rows));
    Json meta{{"schema_version", kResultSchemaVersion}, {"config_hash", hash}, {"config", cfg.to_json()},
              {"rows", result.rows.size()}};
    write_text_file(result.directory + "/meta.json", meta.dump(2) + "\n");
  }
  return result;
}

namespace {

bool compare(double lhs, const std::string& op, double rhs) {
  if (op == "==") return lhs == rhs;
  if (op == "<=") return lhs <= rhs;
  if (op == ">=") return lhs >= rhs;
  if (op == "<") return lhs < rhs;
  if (op == ">") return lhs > rhs;
  if (op == "!=") return lhs != rhs;
  throw InvalidArgument("unknown comparison " + op);
}

// Metric columns of a stored rows.csv, timing dropped.
std::vector<std::string> stored_metric_lines(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    // Drop the wall_ms field (second to last column).
    const auto last = line.rfind(',');
    const auto prev = line.rfind(',', last - 1);
    out.push_back(line.substr(0, prev) + line.substr(last));
  }
  return out;
}

}  // namespace

VerifyReport verify_experiment(const ExperimentResult& result) {
  VerifyReport rep;
  const auto& cfg = result.config;
  for (const auto& r : result.rows)
    if (!r.error.empty()) {
      rep.ok = false;
      rep.lines.push_back("FAIL task error at seed " + std::to_string(r.seed) + ": " + r.error);
    }
  for (const auto& check : cfg.expect) {
    const std::string metric = check.at("metric");
    const std::string op = check.value("op", "==");
    const double value = check.at("value").get<double>();
    const std::string agg = check.value("aggregate", "all");
    std::vector<double> vals;
    for (const auto& r : result.rows)
      if (r.metric == metric) vals.push_back(r.value);
    bool ok = !vals.empty();
    double shown = 0;
    if (agg == "all") {
      for (double v : vals)
        if (!compare(v, op, value)) {
          ok = false;
          shown = v;
          break;
        }
      if (ok && !vals.empty()) shown = vals.front();
    } else {
      double acc = 0;
      if (agg == "sum" || agg == "mean") {
        for (double v : vals) acc += v;
        if (agg == "mean" && !vals.empty()) acc /= double(vals.size());
      } else if (agg == "min" || agg == "max") {
        acc = vals.empty() ? 0 : vals.front();
        for (double v : vals) acc = agg == "min" ? std::min(acc, v) : std::max(acc, v);
      } else {
        throw InvalidArgument("unknown aggregate " + agg);
      }
      shown = acc;
      ok = ok && compare(acc, op, value);
    }
    rep.ok = rep.ok && ok;
    rep.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + agg + "(" + metric + ") " + op + " " + fmt(value) +
                        " (observed " + fmt(shown) + ", " + std::to_string(vals.size()) + " rows)");
  }
  if (!result.directory.empty()) {
    const std::string stored = result.directory + "/rows.csv";
    if (std::filesystem::exists(stored)) {
      std::istringstream fresh(rows_to_csv(result.rows, false));
      std::string line;
      std::getline(fresh, line);
      std::vector<std::string> now;
      while (std::getline(fresh, line)) now.push_back(line);
      const bool same = now == stored_metric_lines(stored);
      rep.ok = rep.ok && same;
      rep.lines.push_back(std::string(same ? "PASS" : "FAIL") + " stored rows for config " + cfg.hash() +
                          (same ? " match" : " differ"));
    }
  }
  return rep;
}

}  // namespace ptlab
