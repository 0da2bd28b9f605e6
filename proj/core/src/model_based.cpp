#include "dualproc/model_based.hpp"

#include <stdexcept>
#include <vector>

#include "dualproc/errors.hpp"

namespace dualproc {

namespace {

// Node counts saturate well below the uint64 ceiling; budget comparisons
// stay exact for any practical cap.
constexpr std::uint64_t kCountCap = 1ULL << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kCountCap - b) ? kCountCap : a + b;
}

}  // namespace

RootEstimates dls_root_estimates(const LookupTable& table, const GridWorld& world,
                                 StateId s, int depth, std::uint64_t node_budget) {
  if (!world.is_free(s)) {
    throw std::invalid_argument("plan root must be a free in-bounds cell");
  }
  if (depth < 1) throw std::invalid_argument("search depth must be >= 1");

  const int n = table.num_states();
  // value[s]: best expected return of a fresh (k-level) search from s;
  // nodes[s]: internal nodes of that subtree. Level 0 is the horizon:
  // table values, nothing expanded.
  std::vector<double> value(static_cast<size_t>(n));
  std::vector<double> value_next(static_cast<size_t>(n), 0.0);
  std::vector<std::uint64_t> nodes(static_cast<size_t>(n), 0);
  std::vector<std::uint64_t> nodes_next(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) value[static_cast<size_t>(i)] = table.value(StateId{i});

  const double gamma = table.discount();
  std::array<double, kNumActions> q{};

  const auto backup = [&](StateId at, std::array<double, kNumActions>& out)
      -> std::uint64_t {
    const auto succ = table.envelope(at);
    const int sz = static_cast<int>(succ.size());
    std::uint64_t expanded = 1;  // this node
    for (int ai = 0; ai < kNumActions; ++ai) {
      const TransitionRow row = table.transition_row(at, kAllActions[ai]);
      double acc = 0.0;
      for (int k = 0; k < sz; ++k) {
        if (row.prob[static_cast<size_t>(k)] == 0.0) continue;
        const StateId sp = row.next[static_cast<size_t>(k)];
        const bool terminal = world.is_terminal(sp);
        const double cont = terminal ? 0.0 : value[static_cast<size_t>(sp.index)];
        acc += row.prob[static_cast<size_t>(k)] *
               (world.reward_of(sp) + gamma * cont);
        if (!terminal) expanded = sat_add(expanded, nodes[static_cast<size_t>(sp.index)]);
      }
      out[static_cast<size_t>(ai)] = acc;
    }
    return expanded;
  };

  for (int level = 1; level < depth; ++level) {
    for (int i = 0; i < n; ++i) {
      const StateId at{i};
      if (!world.is_free(at) || world.is_terminal(at)) {
        value_next[static_cast<size_t>(i)] = 0.0;
        nodes_next[static_cast<size_t>(i)] = 0;
        continue;
      }
      nodes_next[static_cast<size_t>(i)] = backup(at, q);
      value_next[static_cast<size_t>(i)] = *std::max_element(q.begin(), q.end());
    }
    value.swap(value_next);
    nodes.swap(nodes_next);
  }

  RootEstimates root;
  root.nodes_expanded = backup(s, root.values);
  if (root.nodes_expanded > node_budget) {
    throw BudgetExceededError("depth-limited search would expand " +
                              std::to_string(root.nodes_expanded) +
                              " nodes, budget is " + std::to_string(node_budget));
  }
  return root;
}

PlanResult dls_plan(const LookupTable& table, const GridWorld& world, StateId s,
                    int depth, Rng& tie_rng, std::uint64_t node_budget) {
  const RootEstimates root = dls_root_estimates(table, world, s, depth, node_budget);
  PlanResult result;
  result.root_values = root.values;
  result.nodes_expanded = root.nodes_expanded;
  const int chosen = argmax_with_ties(result.root_values, tie_rng);
  result.chosen_action = kAllActions[chosen];
  result.expected_return = result.root_values[static_cast<size_t>(chosen)];
  result.depth_used = depth;
  return result;
}

MbStepOutcome mb_step(LookupTable& table, const GridWorld& world, StateId s,
                      int depth, Rng& rng, std::uint64_t node_budget) {
  if (world.is_terminal(s)) {
    throw std::invalid_argument("cannot take a model-based step from the goal");
  }
  MbStepOutcome out;
  out.plan = dls_plan(table, world, s, depth, rng, node_budget);
  const StepResult env = world.step(s, out.plan.chosen_action, rng);
  out.next = env.next;
  out.reward = env.reward;
  out.done = env.done;
  table.update_transition(s, out.plan.chosen_action, env.next);
  table.bellman_backup(s, [&world](StateId sp) { return world.reward_of(sp); });
  return out;
}

}  // namespace dualproc
