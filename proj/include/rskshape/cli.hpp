#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace rsk::cli {

// One experiment = one config. The seed is mandatory: there is no
// wall-clock fallback, identical (config, seed) pairs produce identical
// sample files regardless of thread count.
struct ExperimentConfig {
  std::string experiment;

  nlohmann::json chain;            // chain spec (see markov::chain_from_json)
  nlohmann::json sigma;            // explicit covariance (matrix json)
  std::vector<double> pi;          // stationary law for explicit-sigma runs

  long long n = 10000;             // word length
  long long trials = 10000;
  int grid = 1024;                 // path cells
  int r = 1;                       // row index (1-based)
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out_dir = ".";
  int threads = 0;
  std::map<std::string, double> tolerances;

  std::string ensemble;            // rmt-compare
  nlohmann::json params;           // rmt-compare ensemble parameters
  std::string reference;           // CSV of reference samples, optional
  bool conjecture = false;

  double b1 = 0.0, b2 = 0.0;       // bridge-check endpoints
  int oracle_max_n = 6;            // oracle-suite exhaustive word length
};

ExperimentConfig config_from_json(const nlohmann::json& j);

struct ReportBundle {
  nlohmann::json report;
  int exit_code = 0;               // 0 ok, 2 verdict failure
  std::vector<std::string> files;  // everything written
};

// Dispatches on cfg.experiment: covariance, shape-distribution,
// brownian-functional, rmt-compare, bridge-check, oracle-suite.
// Throws std::invalid_argument on malformed configs (callers map to exit 1).
ReportBundle run(const ExperimentConfig& cfg);

nlohmann::json merge_reports(const std::vector<std::string>& paths);

}  // namespace rsk::cli
