#include "dualproc/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "dualproc/commands.hpp"
#include "dualproc/errors.hpp"
#include "dualproc/experiment_io.hpp"

namespace dualproc {

namespace {

// Carries CLI11's generated help text out of parse_cli.
struct HelpRequested {
  std::string text;
};

// Shared experiment flags; registered on every subcommand so that
// `dualproc run --trials 50` and `dualproc compare --trials 50` read alike.
struct FlagSet {
  std::string config_file{};
  std::string map{};
  std::string weight_constant{};
  std::string compare_list{};

  void attach(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--config", config_file, "JSON config file (flags override it)");
    cmd->add_option("--map", map, "grid map file ('.', '#', 'S', 'G')");
    cmd->add_option("--controller", cfg.controller,
                    "mb | mf | dual | weighted | uncertainty");
    cmd->add_option("--factor", cfg.factor, "trial-index divisor of the dual schedule");
    cmd->add_option("--chunk-size", cfg.chunk_size, "periodic MB cadence of the dual schedule");
    cmd->add_option("--weight-horizon", cfg.weight_horizon,
                    "trials until w_MB reaches 0 (weighted controller)");
    cmd->add_option("--weight-constant", weight_constant,
                    "fixed w_MB in [0,1] (weighted controller)");
    cmd->add_option("--reliability-smoothing", cfg.reliability_smoothing,
                    "error smoothing in (0,1] (uncertainty controller)");
    cmd->add_option("--gamma", cfg.gamma, "discount factor");
    cmd->add_option("--alpha", cfg.alpha, "TD learning rate");
    cmd->add_option("--epsilon", cfg.epsilon, "initial exploration rate");
    cmd->add_option("--epsilon-decay", cfg.epsilon_decay, "per-trial epsilon decay");
    cmd->add_option("--epsilon-floor", cfg.epsilon_floor, "epsilon floor");
    cmd->add_option("--depth", cfg.depth, "planner search depth");
    cmd->add_option("--step-cap", cfg.step_cap, "trial truncation cap");
    cmd->add_option("--node-budget", cfg.node_budget, "planner node budget");
    cmd->add_option("--trials", cfg.trials, "trials per seed");
    cmd->add_option("--seeds", cfg.seeds, "count N, range a..b, or comma list");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--threads", cfg.threads, "seed workers (0 = hardware)");
  }

  // CLI11 already wrote flag values into cfg. With a config file present
  // the order becomes defaults -> file -> explicitly given flags.
  void finalize(CLI::App* cmd, RunConfig& cfg) {
    if (!config_file.empty()) {
      RunConfig merged = cfg;
      apply_config_json(merged, read_text_file(config_file));
      merge_flags(cmd, cfg, merged);
      cfg = merged;
    }
    if (!map.empty()) cfg.map = map;
    if (!weight_constant.empty()) {
      try {
        cfg.weight_constant = std::stod(weight_constant);
      } catch (const std::exception&) {
        throw ConfigError("invalid --weight-constant value '" + weight_constant + "'");
      }
    }
    if (!compare_list.empty()) {
      cfg.compare.clear();
      size_t pos = 0;
      while (pos <= compare_list.size()) {
        const size_t comma = std::min(compare_list.find(',', pos), compare_list.size());
        const std::string token = compare_list.substr(pos, comma - pos);
        if (!token.empty()) cfg.compare.push_back(token);
        pos = comma + 1;
      }
    }
  }

 private:
  static void merge_flags(CLI::App* cmd, const RunConfig& flags, RunConfig& into) {
    const auto given = [cmd](const std::string& name) {
      const auto* opt = cmd->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--controller")) into.controller = flags.controller;
    if (given("--factor")) into.factor = flags.factor;
    if (given("--chunk-size")) into.chunk_size = flags.chunk_size;
    if (given("--weight-horizon")) into.weight_horizon = flags.weight_horizon;
    if (given("--reliability-smoothing"))
      into.reliability_smoothing = flags.reliability_smoothing;
    if (given("--gamma")) into.gamma = flags.gamma;
    if (given("--alpha")) into.alpha = flags.alpha;
    if (given("--epsilon")) into.epsilon = flags.epsilon;
    if (given("--epsilon-decay")) into.epsilon_decay = flags.epsilon_decay;
    if (given("--epsilon-floor")) into.epsilon_floor = flags.epsilon_floor;
    if (given("--depth")) into.depth = flags.depth;
    if (given("--step-cap")) into.step_cap = flags.step_cap;
    if (given("--node-budget")) into.node_budget = flags.node_budget;
    if (given("--trials")) into.trials = flags.trials;
    if (given("--seeds")) into.seeds = flags.seeds;
    if (given("--out")) into.out_dir = flags.out_dir;
    if (given("--threads")) into.threads = flags.threads;
  }
};

}  // namespace

CliInvocation parse_cli(const std::vector<std::string>& args) {
  CLI::App app{"dual-process grid-world learning simulator", "dualproc"};
  app.require_subcommand(1);

  CliInvocation inv;
  FlagSet run_flags, compare_flags, dump_flags;

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run_flags.attach(run, inv.config);

  CLI::App* compare =
      app.add_subcommand("compare", "run several controllers and join their series");
  compare_flags.attach(compare, inv.config);
  compare->add_option("--controllers", compare_flags.compare_list,
                      "comma list, e.g. mb,mf,dual");

  CLI::App* dump = app.add_subcommand("dump-table", "replay a seed and snapshot the table");
  dump_flags.attach(dump, inv.config);
  dump->add_option("--seed", inv.config.dump_seed, "seed to replay");
  dump->add_option("--after-trial", inv.config.dump_after_trial,
                   "trials to replay before the snapshot");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* sub = nullptr;
    for (CLI::App* candidate : {run, compare, dump}) {
      if (!candidate->parse_order().empty() || candidate->parsed()) sub = candidate;
    }
    throw HelpRequested{(sub ? *sub : app).help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("argument error: ") + e.what());
  }

  if (run->parsed()) {
    inv.command = "run";
    run_flags.finalize(run, inv.config);
  } else if (compare->parsed()) {
    inv.command = "compare";
    compare_flags.finalize(compare, inv.config);
  } else if (dump->parsed()) {
    inv.command = "dump-table";
    dump_flags.finalize(dump, inv.config);
  }
  validate(inv.config);
  return inv;
}

int cli_main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const CliInvocation inv = parse_cli(args);
    if (inv.command == "run") return cmd_run(inv.config, std::cout);
    if (inv.command == "compare") return cmd_compare(inv.config, std::cout);
    if (inv.command == "dump-table") return cmd_dump_table(inv.config, std::cout);
    std::cerr << "error: missing subcommand (run | compare | dump-table)\n";
    return 2;
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dualproc
