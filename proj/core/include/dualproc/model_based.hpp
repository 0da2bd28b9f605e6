#pragma once

#include <array>
#include <cstdint>

#include "dualproc/grid_world.hpp"
#include "dualproc/lookup_table.hpp"
#include "dualproc/rng.hpp"

namespace dualproc {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

struct PlanResult {
  Action chosen_action{Action::North};
  double expected_return{0.0};
  std::uint64_t nodes_expanded{0};
  int depth_used{0};
  // Backed-up root estimate per action; expected_return is the max.
  std::array<double, kNumActions> root_values{};
};

// Depth-limited expectimax over the learned transition model.
//
// A root action's estimate is the probability-weighted return of its search
// tree: rewards discounted along the path (reward at tree depth t carries
// discount^(t-1)) plus discount^depth * V(leaf) from the shared table at
// non-terminal horizon leaves. Terminal (goal) nodes end their path: their
// entry reward is collected, nothing beyond is expanded or bootstrapped.
// Ties at the root break uniformly via tie_rng.
//
// nodes_expanded counts every internal node of that tree, i.e. every
// (state, remaining-depth > 0) node reached through a positive-count model
// edge; horizon leaves and terminal nodes are evaluated, not expanded. A
// point-mass (deterministic) model therefore expands exactly
// sum_{k=0}^{depth-1} 4^k nodes. Throws BudgetExceededError when the count
// exceeds node_budget.
//
// The table is never mutated. Implementation note: subtree value and size
// depend only on (state, remaining depth) -- the search carries no path
// state -- so both are computed by a depth-indexed dynamic program that is
// identical, level by level, to walking the literal tree.
PlanResult dls_plan(const LookupTable& table, const GridWorld& world, StateId s,
                    int depth, Rng& tie_rng,
                    std::uint64_t node_budget = kDefaultNodeBudget);

// The search without the action choice: root estimates and node count only,
// no randomness consumed. dls_plan is this plus one tie-broken argmax;
// callers that blend the estimates (the weighted controller) pick their own
// action so that a shared seed breaks ties identically in both paths.
struct RootEstimates {
  std::array<double, kNumActions> values{};
  std::uint64_t nodes_expanded{0};
};
RootEstimates dls_root_estimates(const LookupTable& table, const GridWorld& world,
                                 StateId s, int depth,
                                 std::uint64_t node_budget = kDefaultNodeBudget);

struct MbStepOutcome {
  StateId next{};
  double reward{0.0};
  bool done{false};
  PlanResult plan{};
};

// One model-based step: plan, execute the chosen action, then update the
// shared table -- transition counts first, Bellman backup of the current
// state second.
MbStepOutcome mb_step(LookupTable& table, const GridWorld& world, StateId s,
                      int depth, Rng& rng,
                      std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace dualproc
