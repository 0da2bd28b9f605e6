#include "dualproc/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dualproc {

double TrialRecord::mb_fraction() const {
  if (steps == 0) return 0.0;
  int mb = 0;
  for (Mode m : mode_tags) mb += (m == Mode::MB) ? 1 : 0;
  return static_cast<double>(mb) / static_cast<double>(steps);
}

TrialRecord run_trial(Controller& controller, const GridWorld& world,
                      LookupTable& table, int trial_index,
                      const ExplorationPolicy& policy, const RunCaps& caps,
                      Rng& rng) {
  if (trial_index < 1) throw std::invalid_argument("trial_index must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const double epsilon = policy.epsilon_for_trial(trial_index);

  TrialRecord rec;
  rec.trial_index = trial_index;
  StateId s = world.start();
  int j = 0;
  while (!world.is_terminal(s) && rec.steps < caps.step_cap) {
    const ControllerStepOutcome out =
        controller.step(table, world, s, trial_index, j, epsilon, rng);
    rec.mode_tags.push_back(out.mode);
    rec.step_costs.push_back(out.cost);
    rec.simulated_time += out.cost;
    ++rec.steps;
    ++j;
    s = out.next;
  }
  rec.truncated = !world.is_terminal(s);
  rec.mean_response_time =
      rec.steps > 0 ? rec.simulated_time / static_cast<double>(rec.steps) : 0.0;
  rec.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

namespace {

// Population statistics, accumulated in fixed seed order.
struct Stats {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / n : 0.0; }
  double stddev() const {
    if (!n) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / n - m * m));
  }
};

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

ExperimentSummary summarize(const std::vector<SeedSeries>& per_seed) {
  ExperimentSummary out;
  if (per_seed.empty()) return out;
  const size_t trials = per_seed.front().trials.size();
  for (const auto& series : per_seed) {
    if (series.trials.size() != trials) {
      throw std::invalid_argument("seeds ran unequal trial counts");
    }
  }
  out.per_trial.reserve(trials);
  for (size_t t = 0; t < trials; ++t) {
    Stats steps, time, rt, mbf;
    for (const auto& series : per_seed) {
      const TrialRecord& rec = series.trials[t];
      steps.add(static_cast<double>(rec.steps));
      time.add(rec.simulated_time);
      rt.add(rec.mean_response_time);
      mbf.add(rec.mb_fraction());
    }
    TrialSummary row;
    row.trial_index = per_seed.front().trials[t].trial_index;
    row.steps_mean = steps.mean();
    row.steps_stddev = steps.stddev();
    row.time_mean = time.mean();
    row.time_stddev = time.stddev();
    row.rt_mean = rt.mean();
    row.rt_stddev = rt.stddev();
    row.mb_fraction_mean = mbf.mean();
    out.per_trial.push_back(row);
  }

  const size_t tail = std::min<size_t>(10, trials);
  Stats tail_steps, tail_rt;
  for (size_t t = trials - tail; t < trials; ++t) {
    tail_steps.add(out.per_trial[t].steps_mean);
    tail_rt.add(out.per_trial[t].rt_mean);
  }
  out.first_trial_steps_mean = out.per_trial.front().steps_mean;
  out.last10_steps_mean = tail_steps.mean();
  out.first_trial_rt_mean = out.per_trial.front().rt_mean;
  out.last10_rt_mean = tail_rt.mean();
  out.steps_last10_over_first =
      out.first_trial_steps_mean > 0 ? out.last10_steps_mean / out.first_trial_steps_mean : 0.0;
  out.rt_last10_over_first =
      out.first_trial_rt_mean > 0 ? out.last10_rt_mean / out.first_trial_rt_mean : 0.0;
  return out;
}

std::string config_fingerprint(const GridWorld& world, const ExperimentConfig& config) {
  std::ostringstream s;
  s << "world:" << world.width() << 'x' << world.height() << ";start="
    << world.start().index << ";goal=" << world.goal().index << ";walls=";
  for (int i = 0; i < world.num_states(); ++i) {
    if (world.is_wall(StateId{i})) s << i << ',';
  }
  s << ";gr=" << world.goal_reward() << ";sr=" << world.step_reward()
    << ";slip=" << world.slip_prob();
  const ControllerSpec& c = config.controller;
  s << "|controller:" << static_cast<int>(c.kind) << ";factor=" << c.factor
    << ";chunk=" << c.chunk_size << ";whorizon=" << c.weights.horizon
    << ";wconst=" << (c.weights.constant ? *c.weights.constant : -1.0)
    << ";smooth=" << c.reliability_smoothing;
  s << "|policy:" << config.policy.epsilon0 << ',' << config.policy.decay << ','
    << config.policy.floor;
  s << "|gamma=" << config.discount << ";alpha=" << config.learning_rate
    << ";depth=" << config.caps.depth << ";cap=" << config.caps.step_cap
    << ";budget=" << config.caps.node_budget << ";trials=" << config.trials
    << "|seeds:";
  for (auto seed : config.seeds) s << seed << ',';
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << fnv1a(s.str());
  return hex.str();
}

ExperimentResult run_experiment(const GridWorld& world, const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.seeds.empty()) throw std::invalid_argument("seed list must be non-empty");

  ExperimentResult result;
  result.config_fingerprint = config_fingerprint(world, config);
  result.per_seed.resize(config.seeds.size());

  const auto run_seed = [&](size_t slot) {
    const std::uint64_t seed = config.seeds[slot];
    SeedSeries series;
    series.seed = seed;
    series.trials.reserve(static_cast<size_t>(config.trials));
    LookupTable table(world, config.discount, config.learning_rate);
    Controller controller(config.controller, config.caps.depth, config.caps.node_budget);
    Rng rng(seed);
    for (int i = 1; i <= config.trials; ++i) {
      series.trials.push_back(
          run_trial(controller, world, table, i, config.policy, config.caps, rng));
    }
    result.per_seed[slot] = std::move(series);
  };

  const int workers =
      std::min<int>(config.threads, static_cast<int>(config.seeds.size()));
  if (workers <= 1) {
    for (size_t slot = 0; slot < config.seeds.size(); ++slot) run_seed(slot);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const size_t slot = cursor.fetch_add(1);
          if (slot >= result.per_seed.size()) return;
          run_seed(slot);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  result.summary = summarize(result.per_seed);
  return result;
}

}  // namespace dualproc
