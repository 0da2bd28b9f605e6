#include "dualproc/oracle.hpp"

#include <cmath>
#include <deque>

#include "dualproc/errors.hpp"

namespace dualproc {

std::vector<int> bfs_distances_to_goal(const GridWorld& world) {
  std::vector<int> dist(static_cast<size_t>(world.num_states()), -1);
  std::deque<StateId> frontier;
  dist[static_cast<size_t>(world.goal().index)] = 0;
  frontier.push_back(world.goal());
  while (!frontier.empty()) {
    const StateId s = frontier.front();
    frontier.pop_front();
    for (Action a : kAllActions) {
      const StateId n = world.move_result(s, a);
      if (n == s) continue;
      if (dist[static_cast<size_t>(n.index)] == -1) {
        dist[static_cast<size_t>(n.index)] = dist[static_cast<size_t>(s.index)] + 1;
        frontier.push_back(n);
      }
    }
  }
  return dist;
}

int bfs_shortest_path(const GridWorld& world) {
  const auto dist = bfs_distances_to_goal(world);
  const int d = dist[static_cast<size_t>(world.start().index)];
  if (d < 0) throw UnreachableGoalError("goal is unreachable from start");
  return d;
}

OracleSolution value_iteration(const GridWorld& world, double discount,
                               double tolerance) {
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("discount must lie in (0, 1)");
  }
  const int n = world.num_states();
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  std::vector<double> next(static_cast<size_t>(n), 0.0);
  double delta = tolerance + 1.0;
  while (delta > tolerance) {
    delta = 0.0;
    for (int i = 0; i < n; ++i) {
      const StateId s{i};
      if (!world.is_free(s) || world.is_terminal(s)) {
        next[static_cast<size_t>(i)] = 0.0;
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (Action a : kAllActions) {
        double q = 0.0;
        for (const auto& [sp, p] : world.true_transition_distribution(s, a)) {
          const double cont = world.is_terminal(sp) ? 0.0 : v[static_cast<size_t>(sp.index)];
          q += p * (world.reward_of(sp) + discount * cont);
        }
        best = std::max(best, q);
      }
      next[static_cast<size_t>(i)] = best;
      delta = std::max(delta, std::abs(best - v[static_cast<size_t>(i)]));
    }
    v.swap(next);
  }
  return {std::move(v), bfs_shortest_path(world)};
}

LookupTable make_true_model_table(const GridWorld& world, double discount,
                                  double learning_rate, bool converge_values) {
  LookupTable table(world, discount, learning_rate);
  std::vector<std::pair<StateId, double>> row;
  for (int i = 0; i < world.num_states(); ++i) {
    const StateId s{i};
    if (!world.is_free(s)) continue;
    for (Action a : kAllActions) {
      const auto dist = world.true_transition_distribution(s, a);
      row.assign(dist.begin(), dist.end());
      table.set_transition_counts(s, a, row);
    }
  }
  if (converge_values) {
    const auto reward = [&world](StateId sp) { return world.reward_of(sp); };
    double delta = 1.0;
    int sweeps = 0;
    while (delta > 1e-12 && sweeps < 100000) {
      delta = 0.0;
      for (int i = 0; i < world.num_states(); ++i) {
        const StateId s{i};
        if (!world.is_free(s) || world.is_terminal(s)) continue;
        const double before = table.value(s);
        table.bellman_backup(s, reward);
        delta = std::max(delta, std::abs(table.value(s) - before));
      }
      ++sweeps;
    }
  }
  return table;
}

}  // namespace dualproc
