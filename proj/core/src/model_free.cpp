#include "dualproc/model_free.hpp"

#include <cmath>
#include <stdexcept>

namespace dualproc {

double ExplorationPolicy::epsilon_for_trial(int trial_index) const {
  if (epsilon0 == 0.0) return 0.0;
  const double eps = epsilon0 * std::pow(decay, trial_index - 1);
  return std::max(floor, eps);
}

Action greedy_action(const LookupTable& table, StateId s, Rng& rng) {
  const auto q = table.q_row(s);
  return kAllActions[argmax_with_ties(q, rng)];
}

MfStepOutcome mf_step(LookupTable& table, const GridWorld& world, StateId s,
                      double epsilon, Rng& rng) {
  if (world.is_terminal(s)) {
    throw std::invalid_argument("cannot take a model-free step from the goal");
  }
  Action a;
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    a = kAllActions[rng.uniform_int(kNumActions)];
  } else {
    a = greedy_action(table, s, rng);
  }
  const StepResult env = world.step(s, a, rng);
  table.td_update(s, a, env.reward, env.next);
  return {env.next, env.reward, env.done, a};
}

RolloutResult greedy_policy_rollout(const LookupTable& table, const GridWorld& world,
                                    int max_steps) {
  if (world.slip_prob() != 0.0) {
    throw std::invalid_argument("greedy rollout requires a deterministic world");
  }
  StateId s = world.start();
  for (int step = 0; step < max_steps; ++step) {
    if (world.is_terminal(s)) return {step, true};
    const auto q = table.q_row(s);
    s = world.move_result(s, kAllActions[argmax_first_index(q)]);
  }
  return {max_steps, world.is_terminal(s)};
}

}  // namespace dualproc
