#pragma once

#include "dualproc/grid_world.hpp"
#include "dualproc/lookup_table.hpp"
#include "dualproc/rng.hpp"

namespace dualproc {

// Per-trial exploration schedule. Algorithm-wise the model-free step is
// purely greedy; the epsilon floor keeps a sparse-reward grid from trapping
// a greedy zero-initialized agent in cycles. epsilon0 == 0 stays exactly
// zero so the degenerate greedy mode remains reachable.
struct ExplorationPolicy {
  double epsilon0 = 0.1;
  double decay = 0.995;     // multiplicative per-trial decay
  double floor = 0.01;

  // Epsilon used during 1-based trial i: epsilon0 * decay^(i-1), clamped.
  double epsilon_for_trial(int trial_index) const;
};

// argmax_a Q(s, a) with seeded uniform tie-breaks (the learning-time rule).
Action greedy_action(const LookupTable& table, StateId s, Rng& rng);

struct MfStepOutcome {
  StateId next{};
  double reward{0.0};
  bool done{false};
  Action action{Action::North};
};

// One model-free step: epsilon-greedy action from the shared Q-table, then
// a TD update. Transition counts are untouched.
MfStepOutcome mf_step(LookupTable& table, const GridWorld& world, StateId s,
                      double epsilon, Rng& rng);

struct RolloutResult {
  int steps{0};
  bool reached_goal{false};
};

// Evaluation rollout: epsilon = 0, first-index tie-break, from the start
// state of a deterministic world. Learns nothing. Not reaching the goal
// within max_steps is reported, not an error.
RolloutResult greedy_policy_rollout(const LookupTable& table, const GridWorld& world,
                                    int max_steps);

}  // namespace dualproc
