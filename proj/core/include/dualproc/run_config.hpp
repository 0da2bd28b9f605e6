#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualproc/experiment.hpp"
#include "dualproc/grid_world.hpp"

namespace dualproc {

// Fully resolved invocation configuration. Precedence when building one:
// command-line flags over config-file values over defaults. The semantic
// part (everything that determines results) is echoed to config.resolved;
// execution knobs (out_dir, threads) and subcommand arguments are not.
struct RunConfig {
  // world: the built-in default grid unless a map file is given
  std::optional<std::string> map{};

  std::string controller = "dual";  // mb | mf | dual | weighted | uncertainty
  int factor = 5;
  int chunk_size = 4;
  double weight_horizon = 50.0;
  std::optional<double> weight_constant{};
  double reliability_smoothing = 0.5;

  double gamma = 0.9;
  double alpha = 0.1;
  double epsilon = 0.1;
  double epsilon_decay = 0.995;
  double epsilon_floor = 0.01;

  int depth = 4;
  int step_cap = 10000;
  std::uint64_t node_budget = 1'000'000;
  int trials = 100;
  std::string seeds = "30";  // count N (= 1..N), range a..b, or comma list
  std::vector<std::string> compare = {"mb", "mf", "dual"};

  // execution knobs, excluded from the echo and the fingerprint
  std::string out_dir = "out";
  int threads = 0;  // 0 = hardware concurrency

  // dump-table arguments
  std::uint64_t dump_seed = 1;
  int dump_after_trial = 0;
};

// Seed spec forms: "30" (count, seeds 1..30), "4..12" (inclusive range),
// "1,5,9" (explicit list). Throws ConfigError on anything else.
std::vector<std::uint64_t> parse_seeds(const std::string& spec);

// Applies a JSON config file over `config`. Unknown keys are rejected.
void apply_config_json(RunConfig& config, const std::string& json_text);

// Range and consistency checks; throws ConfigError.
void validate(const RunConfig& config);

// Canonical echo of the semantic configuration; re-parsable by
// apply_config_json.
std::string resolved_json(const RunConfig& config);

GridWorld make_world(const RunConfig& config);
ControllerSpec controller_spec_for(const RunConfig& config, const std::string& token);
ExperimentConfig experiment_config(const RunConfig& config);

}  // namespace dualproc
