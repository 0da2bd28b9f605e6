#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dualproc/experiment.hpp"

namespace dualproc {

// Shortest round-trip decimal form, locale-independent. All data files go
// through this so that identical results serialize to identical bytes.
std::string format_double(double x);

// trials.csv: one row per (seed, trial), header
// seed,trial,steps,simulated_time,mean_response_time,mb_fraction,truncated
std::string trials_csv(const ExperimentResult& result);

// summary.csv: one row per trial index with cross-seed statistics.
std::string summary_csv(const ExperimentResult& result);

// Joined per-trial comparison of several experiments, keyed by trial index.
std::string comparison_csv(
    const std::vector<std::pair<std::string, ExperimentResult>>& runs);

// Full structured result document (fingerprint, per-trial records, summary).
std::string result_json(const ExperimentResult& result);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dualproc
