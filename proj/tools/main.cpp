// rskshape: exact Young-diagram statistics of Markov random words, their
// limiting Brownian functionals, and matching random-matrix ensembles.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rskshape/cli.hpp"
#include "rskshape/io.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  long long trials = -1;
  int grid = -1;
  long long n = -1;
  int r = -1;
  int threads = -1;
  std::vector<std::string> tolerance_kv;
  std::string chain_path;
  std::string reference;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "experiment config JSON");
  cmd->add_option("--seed", f.seed, "64-bit seed (mandatory here or in the config)");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials");
  cmd->add_option("--grid", f.grid, "path grid cells");
  cmd->add_option("--n", f.n, "word length");
  cmd->add_option("--r", f.r, "row index (1-based)");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  cmd->add_option("--tolerance", f.tolerance_kv, "override tolerance, k=v")
      ->take_all();
  cmd->add_option("--chain", f.chain_path, "chain spec JSON file");
  cmd->add_option("--reference", f.reference, "reference sample CSV");
}

rsk::cli::ExperimentConfig build_config(const std::string& experiment,
                                        const CommonFlags& f) {
  nlohmann::json j;
  if (!f.config_path.empty()) j = rsk::io::read_json(f.config_path);
  j["experiment"] = experiment;
  if (!f.chain_path.empty()) j["chain"] = rsk::io::read_json(f.chain_path);
  if (f.seed >= 0) j["seed"] = static_cast<std::uint64_t>(f.seed);
  if (f.trials >= 0) j["trials"] = f.trials;
  if (f.grid >= 0) j["grid"] = f.grid;
  if (f.n >= 0) j["n"] = f.n;
  if (f.r >= 0) j["r"] = f.r;
  if (f.threads >= 0) j["threads"] = f.threads;
  if (!f.out_dir.empty()) j["out"] = f.out_dir;
  if (!f.reference.empty()) j["reference"] = f.reference;
  for (const std::string& kv : f.tolerance_kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--tolerance expects k=v, got '" + kv + "'");
    j["tolerances"][kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return rsk::cli::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RSK shape statistics of Markov random words"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {
      "covariance",      "shape-distribution", "brownian-functional",
      "rmt-compare",     "bridge-check",       "oracle-suite"};

  std::map<std::string, CommonFlags> flags;
  std::map<std::string, CLI::App*> cmds;
  for (const std::string& name : experiments) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common(cmd, flags[name]);
  }
  // rmt-compare extras
  std::string ensemble;
  std::string params_json;
  bool conjecture = false;
  {
    CLI::App* cmd = app.get_subcommand("rmt-compare");
    cmd->add_option("--ensemble", ensemble,
                    "gue | traceless-gue | two-block | t53-permutation | "
                    "t53-rank-one | t53-cyclic2 | t53-cyclic3");
    cmd->add_option("--params", params_json, "ensemble parameter JSON string");
    cmd->add_flag("--conjecture", conjecture,
                  "run the mixed-multiplicity block experiment");
  }
  // bridge-check extras
  double b1 = 0.0, b2 = 0.0;
  {
    CLI::App* cmd = app.get_subcommand("bridge-check");
    cmd->add_option("--b1", b1, "first bridge endpoint");
    cmd->add_option("--b2", b2, "second bridge endpoint");
  }
  // oracle-suite extras
  int oracle_max_n = -1;
  app.get_subcommand("oracle-suite")
      ->add_option("--max-n", oracle_max_n, "exhaustive word length cap (<= 8)");

  // report: merge verdict JSONs
  std::vector<std::string> report_paths;
  std::string report_out;
  {
    CLI::App* cmd = app.add_subcommand("report", "merge experiment reports");
    cmd->add_option("files", report_paths, "report JSON files")->required();
    cmd->add_option("--out", report_out, "merged output path");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.get_subcommand("report")->parsed()) {
      const nlohmann::json merged = rsk::cli::merge_reports(report_paths);
      if (report_out.empty())
        std::cout << merged.dump(2) << '\n';
      else
        rsk::io::write_json(report_out, merged);
      return merged["all_pass"].get<bool>() ? 0 : 2;
    }
    for (const std::string& name : experiments) {
      if (!app.get_subcommand(name)->parsed()) continue;
      rsk::cli::ExperimentConfig cfg = build_config(name, flags[name]);
      if (name == "rmt-compare") {
        if (!ensemble.empty()) cfg.ensemble = ensemble;
        if (!params_json.empty()) cfg.params = nlohmann::json::parse(params_json);
        if (conjecture) cfg.conjecture = true;
      }
      if (name == "bridge-check") {
        if (app.get_subcommand(name)->count("--b1")) cfg.b1 = b1;
        if (app.get_subcommand(name)->count("--b2")) cfg.b2 = b2;
      }
      if (name == "oracle-suite" && oracle_max_n >= 0) cfg.oracle_max_n = oracle_max_n;
      const rsk::cli::ReportBundle bundle = rsk::cli::run(cfg);
      std::cout << bundle.report.dump(2) << '\n';
      return bundle.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
