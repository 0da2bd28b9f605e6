#include "dualproc/run_config.hpp"

#include <charconv>
#include <set>
#include <thread>

#include <json.hpp>

#include "dualproc/errors.hpp"

namespace dualproc {

namespace {

using nlohmann::json;

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid integer '" + text + "' in seed spec");
  }
  return value;
}

const std::set<std::string> kKnownKeys = {
    "map",          "controller",      "factor",
    "chunk_size",   "weight_horizon",  "weight_constant",
    "reliability_smoothing",           "gamma",
    "alpha",        "epsilon",         "epsilon_decay",
    "epsilon_floor", "depth",          "step_cap",
    "node_budget",  "trials",          "seeds",
    "compare",
};

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  if (spec.empty()) throw ConfigError("seed spec is empty");
  std::vector<std::uint64_t> seeds;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const std::uint64_t lo = parse_u64(spec.substr(0, dots));
    const std::uint64_t hi = parse_u64(spec.substr(dots + 2));
    if (hi < lo) throw ConfigError("seed range '" + spec + "' is descending");
    if (hi - lo >= 1000000) throw ConfigError("seed range '" + spec + "' is too large");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  } else if (spec.find(',') != std::string::npos) {
    size_t pos = 0;
    while (pos <= spec.size()) {
      const size_t comma = std::min(spec.find(',', pos), spec.size());
      const std::string token = spec.substr(pos, comma - pos);
      if (!token.empty()) seeds.push_back(parse_u64(token));
      pos = comma + 1;
    }
    if (seeds.empty()) throw ConfigError("seed list '" + spec + "' is empty");
  } else {
    const std::uint64_t count = parse_u64(spec);
    if (count < 1) throw ConfigError("seed count must be >= 1");
    if (count >= 1000000) throw ConfigError("seed count is too large");
    for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
  }
  return seeds;
}

void apply_config_json(RunConfig& config, const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (!kKnownKeys.contains(key)) {
        throw ConfigError("unknown config key '" + key + "'");
      }
      if (key == "map") {
        if (value.is_null())
          config.map.reset();
        else
          config.map = value.get<std::string>();
      } else if (key == "controller") {
        config.controller = value.get<std::string>();
      } else if (key == "factor") {
        config.factor = value.get<int>();
      } else if (key == "chunk_size") {
        config.chunk_size = value.get<int>();
      } else if (key == "weight_horizon") {
        config.weight_horizon = value.get<double>();
      } else if (key == "weight_constant") {
        if (value.is_null())
          config.weight_constant.reset();
        else
          config.weight_constant = value.get<double>();
      } else if (key == "reliability_smoothing") {
        config.reliability_smoothing = value.get<double>();
      } else if (key == "gamma") {
        config.gamma = value.get<double>();
      } else if (key == "alpha") {
        config.alpha = value.get<double>();
      } else if (key == "epsilon") {
        config.epsilon = value.get<double>();
      } else if (key == "epsilon_decay") {
        config.epsilon_decay = value.get<double>();
      } else if (key == "epsilon_floor") {
        config.epsilon_floor = value.get<double>();
      } else if (key == "depth") {
        config.depth = value.get<int>();
      } else if (key == "step_cap") {
        config.step_cap = value.get<int>();
      } else if (key == "node_budget") {
        config.node_budget = value.get<std::uint64_t>();
      } else if (key == "trials") {
        config.trials = value.get<int>();
      } else if (key == "seeds") {
        config.seeds = value.get<std::string>();
      } else if (key == "compare") {
        config.compare = value.get<std::vector<std::string>>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
}

std::string normalize_controller(const std::string& token) {
  if (token == "mb" || token == "pure-mb") return "mb";
  if (token == "mf" || token == "pure-mf") return "mf";
  if (token == "dual" || token == "interleaved" || token == "interleaved-dual") {
    return "dual";
  }
  if (token == "weighted" || token == "weighted-dual") return "weighted";
  if (token == "uncertainty" || token == "uncertainty-dual") return "uncertainty";
  throw ConfigError("unknown controller '" + token + "'");
}

void validate(const RunConfig& config) {
  normalize_controller(config.controller);
  for (const auto& token : config.compare) normalize_controller(token);
  if (config.factor < 1) throw ConfigError("factor must be >= 1");
  if (config.chunk_size < 1) throw ConfigError("chunk_size must be >= 1");
  if (!(config.weight_horizon > 0)) throw ConfigError("weight_horizon must be > 0");
  if (config.weight_constant &&
      (*config.weight_constant < 0.0 || *config.weight_constant > 1.0)) {
    throw ConfigError("weight_constant must lie in [0, 1]");
  }
  if (!(config.reliability_smoothing > 0.0 && config.reliability_smoothing <= 1.0)) {
    throw ConfigError("reliability_smoothing must lie in (0, 1]");
  }
  if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
    throw ConfigError("gamma must lie in (0, 1)");
  }
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw ConfigError("alpha must lie in (0, 1]");
  }
  if (config.epsilon < 0.0 || config.epsilon > 1.0) {
    throw ConfigError("epsilon must lie in [0, 1]");
  }
  if (!(config.epsilon_decay > 0.0 && config.epsilon_decay <= 1.0)) {
    throw ConfigError("epsilon_decay must lie in (0, 1]");
  }
  if (config.epsilon_floor < 0.0 || config.epsilon_floor > 1.0) {
    throw ConfigError("epsilon_floor must lie in [0, 1]");
  }
  if (config.depth < 1) throw ConfigError("depth must be >= 1");
  if (config.step_cap < 1) throw ConfigError("step_cap must be >= 1");
  if (config.node_budget < 1) throw ConfigError("node_budget must be >= 1");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.dump_after_trial < 0 || config.dump_after_trial > config.trials) {
    throw ConfigError("after-trial must lie in [0, trials]");
  }
  parse_seeds(config.seeds);
}

std::string resolved_json(const RunConfig& config) {
  json doc;
  doc["map"] = config.map ? json(*config.map) : json(nullptr);
  doc["controller"] = config.controller;
  doc["factor"] = config.factor;
  doc["chunk_size"] = config.chunk_size;
  doc["weight_horizon"] = config.weight_horizon;
  doc["weight_constant"] =
      config.weight_constant ? json(*config.weight_constant) : json(nullptr);
  doc["reliability_smoothing"] = config.reliability_smoothing;
  doc["gamma"] = config.gamma;
  doc["alpha"] = config.alpha;
  doc["epsilon"] = config.epsilon;
  doc["epsilon_decay"] = config.epsilon_decay;
  doc["epsilon_floor"] = config.epsilon_floor;
  doc["depth"] = config.depth;
  doc["step_cap"] = config.step_cap;
  doc["node_budget"] = config.node_budget;
  doc["trials"] = config.trials;
  doc["seeds"] = config.seeds;
  doc["compare"] = config.compare;
  return doc.dump(2) + "\n";
}

GridWorld make_world(const RunConfig& config) {
  if (config.map) return GridWorld::from_map_file(*config.map);
  return GridWorld(GridSpec{});
}

ControllerSpec controller_spec_for(const RunConfig& config, const std::string& token) {
  ControllerSpec spec;
  const std::string kind = normalize_controller(token);
  if (kind == "mb") {
    spec.kind = ControllerKind::PureMb;
  } else if (kind == "mf") {
    spec.kind = ControllerKind::PureMf;
  } else if (kind == "dual") {
    spec.kind = ControllerKind::InterleavedDual;
  } else if (kind == "weighted") {
    spec.kind = ControllerKind::WeightedDual;
  } else {
    spec.kind = ControllerKind::UncertaintyDual;
  }
  spec.factor = config.factor;
  spec.chunk_size = config.chunk_size;
  spec.weights.horizon = config.weight_horizon;
  spec.weights.constant = config.weight_constant;
  spec.reliability_smoothing = config.reliability_smoothing;
  return spec;
}

ExperimentConfig experiment_config(const RunConfig& config) {
  ExperimentConfig ec;
  ec.controller = controller_spec_for(config, config.controller);
  ec.policy = ExplorationPolicy{config.epsilon, config.epsilon_decay,
                                config.epsilon_floor};
  ec.discount = config.gamma;
  ec.learning_rate = config.alpha;
  ec.caps = RunCaps{config.step_cap, config.depth, config.node_budget};
  ec.trials = config.trials;
  ec.seeds = parse_seeds(config.seeds);
  ec.threads = config.threads > 0
                   ? config.threads
                   : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return ec;
}

}  // namespace dualproc
