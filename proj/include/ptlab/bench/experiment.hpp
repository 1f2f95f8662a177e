#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptlab/core/json_io.hpp"
#include "ptlab/families/common.hpp"

namespace ptlab {

inline constexpr int kResultSchemaVersion = 1;

struct ExperimentConfig {
  std::string experiment;
  std::string family = "mono";
  std::vector<std::uint32_t> n;
  std::vector<World> worlds{World::yes};
  std::uint64_t seed_start = 0;
  std::uint64_t seeds = 1;
  std::uint64_t samples = 0;
  Json tester = Json::object();   // TesterConfig fields
  Json params = Json::object();   // experiment-specific knobs
  Json expect = Json::array();    // checks run by verify
  std::string out = "results";
  unsigned threads = 1;

  static ExperimentConfig from_json(const Json& j);
  Json to_json() const;
  // Everything that can change results; out and threads are excluded.
  Json canonical() const;
  std::string hash() const;
};

struct ResultRow {
  std::string experiment;
  std::string config_hash;
  std::int64_t seed = 0;  // -1 on aggregate rows
  std::uint32_t n = 0;
  std::string world;
  std::string metric;
  double value = 0;
  double ci = 0;
  std::uint64_t queries = 0;
  double wall_ms = 0;
  std::string error;
};

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_timing = true);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ResultRow> rows;
  std::string directory;  // empty when nothing was written
};

std::vector<std::string> experiment_names();

// Runs the (n x world x seed) grid on cfg.threads workers; rows come out in grid
// order regardless of scheduling. A failing task becomes an "error" row.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write = true);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> lines;
};

// Evaluates cfg.expect against rows. When a rows.csv for the same config hash
// already exists, its metric columns must match as well.
VerifyReport verify_experiment(const ExperimentResult& result);

}  // namespace ptlab
