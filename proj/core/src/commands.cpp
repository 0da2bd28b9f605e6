#include "dualproc/commands.hpp"

#include <filesystem>

#include "dualproc/experiment_io.hpp"
#include "dualproc/table_io.hpp"

namespace dualproc {

namespace fs = std::filesystem;

namespace {

void write_experiment_files(const fs::path& dir, const ExperimentResult& result) {
  fs::create_directories(dir);
  write_text_file((dir / "trials.csv").string(), trials_csv(result));
  write_text_file((dir / "summary.csv").string(), summary_csv(result));
  write_text_file((dir / "result.json").string(), result_json(result));
}

void print_final_line(std::ostream& out, const std::string& label,
                      const ExperimentResult& result) {
  out << label << ": final mean steps " << format_double(result.summary.last10_steps_mean)
      << ", final mean response time " << format_double(result.summary.last10_rt_mean)
      << " (fingerprint " << result.config_fingerprint << ")\n";
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out) {
  validate(config);
  const GridWorld world = make_world(config);
  const ExperimentResult result = run_experiment(world, experiment_config(config));
  const fs::path dir(config.out_dir);
  write_experiment_files(dir, result);
  write_text_file((dir / "config.resolved").string(), resolved_json(config));
  print_final_line(out, config.controller, result);
  return 0;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  validate(config);
  if (config.compare.empty()) throw ConfigError("compare list is empty");
  const GridWorld world = make_world(config);
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);

  std::vector<std::pair<std::string, ExperimentResult>> runs;
  runs.reserve(config.compare.size());
  for (const std::string& token : config.compare) {
    ExperimentConfig ec = experiment_config(config);
    ec.controller = controller_spec_for(config, token);
    ExperimentResult result = run_experiment(world, ec);
    write_experiment_files(dir / token, result);
    print_final_line(out, token, result);
    runs.emplace_back(token, std::move(result));
  }
  write_text_file((dir / "comparison.csv").string(), comparison_csv(runs));
  write_text_file((dir / "config.resolved").string(), resolved_json(config));
  return 0;
}

int cmd_dump_table(const RunConfig& config, std::ostream& out) {
  validate(config);
  const GridWorld world = make_world(config);
  const ExperimentConfig ec = experiment_config(config);

  LookupTable table(world, ec.discount, ec.learning_rate);
  Controller controller(ec.controller, ec.caps.depth, ec.caps.node_budget);
  Rng rng(config.dump_seed);
  for (int i = 1; i <= config.dump_after_trial; ++i) {
    run_trial(controller, world, table, i, ec.policy, ec.caps, rng);
  }

  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  const fs::path file =
      dir / ("table_seed" + std::to_string(config.dump_seed) + "_after" +
             std::to_string(config.dump_after_trial) + ".json");
  write_text_file(file.string(), table_to_json_text(table));
  write_text_file((dir / "config.resolved").string(), resolved_json(config));
  out << "table snapshot written to " << file.string() << "\n";
  return 0;
}

}  // namespace dualproc
