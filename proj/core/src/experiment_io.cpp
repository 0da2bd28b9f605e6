#include "dualproc/experiment_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dualproc {

std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf.data(), end);
}

std::string trials_csv(const ExperimentResult& result) {
  std::string out =
      "seed,trial,steps,simulated_time,mean_response_time,mb_fraction,truncated\n";
  for (const SeedSeries& series : result.per_seed) {
    for (const TrialRecord& rec : series.trials) {
      out += std::to_string(series.seed);
      out += ',';
      out += std::to_string(rec.trial_index);
      out += ',';
      out += std::to_string(rec.steps);
      out += ',';
      out += format_double(rec.simulated_time);
      out += ',';
      out += format_double(rec.mean_response_time);
      out += ',';
      out += format_double(rec.mb_fraction());
      out += ',';
      out += rec.truncated ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result) {
  std::string out =
      "trial,steps_mean,steps_stddev,time_mean,time_stddev,rt_mean,rt_stddev,"
      "mb_fraction_mean\n";
  for (const TrialSummary& row : result.summary.per_trial) {
    out += std::to_string(row.trial_index);
    out += ',';
    out += format_double(row.steps_mean);
    out += ',';
    out += format_double(row.steps_stddev);
    out += ',';
    out += format_double(row.time_mean);
    out += ',';
    out += format_double(row.time_stddev);
    out += ',';
    out += format_double(row.rt_mean);
    out += ',';
    out += format_double(row.rt_stddev);
    out += ',';
    out += format_double(row.mb_fraction_mean);
    out += '\n';
  }
  return out;
}

std::string comparison_csv(
    const std::vector<std::pair<std::string, ExperimentResult>>& runs) {
  if (runs.empty()) return "trial\n";
  std::string out = "trial";
  for (const auto& [name, unused] : runs) {
    (void)unused;
    out += ',' + name + "_steps_mean," + name + "_steps_stddev," + name +
           "_rt_mean," + name + "_rt_stddev";
  }
  out += '\n';
  const size_t trials = runs.front().second.summary.per_trial.size();
  for (const auto& [name, run] : runs) {
    (void)name;
    if (run.summary.per_trial.size() != trials) {
      throw std::invalid_argument("comparison runs have unequal trial counts");
    }
  }
  for (size_t t = 0; t < trials; ++t) {
    out += std::to_string(runs.front().second.summary.per_trial[t].trial_index);
    for (const auto& [unused, run] : runs) {
      (void)unused;
      const TrialSummary& row = run.summary.per_trial[t];
      out += ',' + format_double(row.steps_mean) + ',' +
             format_double(row.steps_stddev) + ',' + format_double(row.rt_mean) +
             ',' + format_double(row.rt_stddev);
    }
    out += '\n';
  }
  return out;
}

std::string result_json(const ExperimentResult& result) {
  using nlohmann::json;
  json doc;
  doc["config_fingerprint"] = result.config_fingerprint;
  json seeds = json::array();
  for (const SeedSeries& series : result.per_seed) {
    json trials = json::array();
    for (const TrialRecord& rec : series.trials) {
      trials.push_back({{"trial", rec.trial_index},
                        {"steps", rec.steps},
                        {"simulated_time", rec.simulated_time},
                        {"mean_response_time", rec.mean_response_time},
                        {"mb_fraction", rec.mb_fraction()},
                        {"truncated", rec.truncated}});
    }
    seeds.push_back({{"seed", series.seed}, {"trials", std::move(trials)}});
  }
  doc["per_seed"] = std::move(seeds);
  json per_trial = json::array();
  for (const TrialSummary& row : result.summary.per_trial) {
    per_trial.push_back({{"trial", row.trial_index},
                         {"steps_mean", row.steps_mean},
                         {"steps_stddev", row.steps_stddev},
                         {"time_mean", row.time_mean},
                         {"time_stddev", row.time_stddev},
                         {"rt_mean", row.rt_mean},
                         {"rt_stddev", row.rt_stddev},
                         {"mb_fraction_mean", row.mb_fraction_mean}});
  }
  doc["summary"] = {
      {"per_trial", std::move(per_trial)},
      {"first_trial_steps_mean", result.summary.first_trial_steps_mean},
      {"last10_steps_mean", result.summary.last10_steps_mean},
      {"steps_last10_over_first", result.summary.steps_last10_over_first},
      {"first_trial_rt_mean", result.summary.first_trial_rt_mean},
      {"last10_rt_mean", result.summary.last10_rt_mean},
      {"rt_last10_over_first", result.summary.rt_last10_over_first},
  };
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dualproc
