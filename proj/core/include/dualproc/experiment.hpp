#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualproc/controller.hpp"
#include "dualproc/grid_world.hpp"
#include "dualproc/lookup_table.hpp"
#include "dualproc/model_free.hpp"

namespace dualproc {

struct RunCaps {
  int step_cap = 10000;  // trial truncation; capped trials are data, not errors
  int depth = 4;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct TrialRecord {
  int trial_index{1};
  int steps{0};
  double simulated_time{0.0};  // effort units, sum of per-step costs
  std::vector<Mode> mode_tags{};
  std::vector<double> step_costs{};  // aligned with mode_tags
  bool truncated{false};
  double mean_response_time{0.0};  // simulated_time / steps, 0 for empty trials
  double wall_clock_seconds{0.0};  // diagnostic only, never written to data files

  double mb_fraction() const;
};

// One episode from the start state until the goal or the step cap. The
// table carries learning out of the trial.
TrialRecord run_trial(Controller& controller, const GridWorld& world,
                      LookupTable& table, int trial_index,
                      const ExplorationPolicy& policy, const RunCaps& caps,
                      Rng& rng);

struct SeedSeries {
  std::uint64_t seed{0};
  std::vector<TrialRecord> trials{};
};

struct TrialSummary {
  int trial_index{1};
  double steps_mean{0.0};
  double steps_stddev{0.0};
  double time_mean{0.0};
  double time_stddev{0.0};
  double rt_mean{0.0};
  double rt_stddev{0.0};
  double mb_fraction_mean{0.0};
};

struct ExperimentSummary {
  std::vector<TrialSummary> per_trial{};
  // First-trial vs last-10-trials aggregates over the cross-seed means.
  double first_trial_steps_mean{0.0};
  double last10_steps_mean{0.0};
  double steps_last10_over_first{0.0};
  double first_trial_rt_mean{0.0};
  double last10_rt_mean{0.0};
  double rt_last10_over_first{0.0};
};

struct ExperimentConfig {
  ControllerSpec controller{};
  ExplorationPolicy policy{};
  double discount = 0.9;
  double learning_rate = 0.1;
  RunCaps caps{};
  int trials = 100;
  std::vector<std::uint64_t> seeds{};
  // Worker threads across seeds; <= 1 runs sequentially. Results are
  // independent of this knob, which is why it is not part of the
  // fingerprint.
  int threads = 1;
};

struct ExperimentResult {
  std::string config_fingerprint{};  // 16 hex digits over the semantic config
  std::vector<SeedSeries> per_seed{};
  ExperimentSummary summary{};
};

// Cross-seed per-trial-index means and population standard deviations.
// Every seed must have run the same trial count.
ExperimentSummary summarize(const std::vector<SeedSeries>& per_seed);

// For each seed: a fresh table, then `trials` sequential trials with the
// table persisting across them. Deterministic per seed; seeds may run on
// parallel workers without changing any output.
ExperimentResult run_experiment(const GridWorld& world, const ExperimentConfig& config);

// The fingerprint hash of world + semantic experiment parameters.
std::string config_fingerprint(const GridWorld& world, const ExperimentConfig& config);

}  // namespace dualproc
