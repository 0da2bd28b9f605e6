#pragma once

#include <vector>

#include "dualproc/grid_world.hpp"
#include "dualproc/lookup_table.hpp"

namespace dualproc {

// Independent brute-force solvers used to verify learned behavior. Not part
// of any agent.

struct OracleSolution {
  std::vector<double> optimal_values;  // indexed by StateId; walls stay 0
  int shortest_path_length{0};
};

// Exact minimal move count start -> goal on the grid's four-connected
// geometry. Throws UnreachableGoalError when no path exists.
int bfs_shortest_path(const GridWorld& world);

// Moves-to-goal for every free cell (goal's own entry is 0); -1 where the
// goal is unreachable. Grid adjacency is symmetric, so a reverse BFS from
// the goal gives forward distances.
std::vector<int> bfs_distances_to_goal(const GridWorld& world);

// Bellman-optimality fixed point over the true transition distributions,
// goal absorbing at value zero. Sweeps until the max value change drops
// below tolerance.
OracleSolution value_iteration(const GridWorld& world, double discount,
                               double tolerance = 1e-10);

// A lookup table whose transition rows equal the environment's true
// distributions (exact point masses when slip_prob is 0). With
// converge_values set, V and Q are additionally driven to the model's own
// Bellman fixed point by repeated bellman_backup sweeps.
LookupTable make_true_model_table(const GridWorld& world, double discount,
                                  double learning_rate,
                                  bool converge_values = false);

}  // namespace dualproc
