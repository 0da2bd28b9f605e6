#include "dualproc/oracle.hpp"

#include <cmath>
#include <gtest/gtest.h>

#include "dualproc/errors.hpp"
#include "test_util.hpp"

namespace dualproc {
namespace {

using testing::center_wall_world;
using testing::open_world;

TEST(Bfs, OpenGridIsManhattanDistance) {
  for (int w = 2; w <= 7; ++w) {
    for (int h = 2; h <= 7; ++h) {
      EXPECT_EQ(bfs_shortest_path(open_world(w, h)), (w - 1) + (h - 1));
    }
  }
}

TEST(Bfs, CenterWallDetour) { EXPECT_EQ(bfs_shortest_path(center_wall_world()), 4); }

TEST(Bfs, StartEqualsGoal) {
  GridSpec spec;
  spec.width = 3;
  spec.height = 3;
  spec.start = {1, 1};
  spec.goal = {1, 1};
  EXPECT_EQ(bfs_shortest_path(GridWorld(spec)), 0);
}

TEST(Bfs, UnreachableGoalThrows) {
  const GridWorld w = GridWorld::from_map_text(
      "S.#.\n"
      "..#.\n"
      "..#G\n");
  EXPECT_THROW(bfs_shortest_path(w), UnreachableGoalError);
}

TEST(ValueIteration, ClosedFormOnOpenGrid) {
  const GridWorld w = open_world(5, 5);
  const OracleSolution sol = value_iteration(w, 0.9);
  EXPECT_EQ(sol.shortest_path_length, 8);
  EXPECT_NEAR(sol.optimal_values[static_cast<size_t>(w.start().index)],
              std::pow(0.9, 7), 1e-9);
  // goal-adjacent state: entering action is worth exactly goal_reward
  EXPECT_NEAR(sol.optimal_values[static_cast<size_t>(w.state_at({4, 3}).index)], 1.0,
              1e-9);
  EXPECT_DOUBLE_EQ(sol.optimal_values[static_cast<size_t>(w.goal().index)], 0.0);
}

TEST(ValueIteration, ClosedFormHoldsAcrossGridSizes) {
  for (int size = 2; size <= 6; ++size) {
    const GridWorld w = open_world(size, size);
    const OracleSolution sol = value_iteration(w, 0.9);
    for (int i = 0; i < w.num_states(); ++i) {
      const StateId s{i};
      if (!w.is_free(s) || w.is_terminal(s)) continue;
      const int d = bfs_distances_to_goal(w)[static_cast<size_t>(i)];
      EXPECT_NEAR(sol.optimal_values[static_cast<size_t>(i)], std::pow(0.9, d - 1),
                  1e-9);
    }
  }
}

// Regression fixture: 3x3 grid with slip 0.2, gamma 0.9. Frozen from the
// first verified run of this solver (cross-checked against an independent
// linear-system solution).
TEST(ValueIteration, SlipFixture) {
  const GridWorld w = open_world(3, 3, 0.2);
  const OracleSolution sol = value_iteration(w, 0.9, 1e-12);
  EXPECT_NEAR(sol.optimal_values[static_cast<size_t>(w.start().index)],
              0.6629796887549144, 1e-9);
}

TEST(TrueModelTable, RowsMatchEnvironment) {
  const GridWorld w = open_world(4, 4, 0.3);
  const LookupTable t = make_true_model_table(w, 0.9, 0.1);
  for (int i = 0; i < w.num_states(); ++i) {
    const StateId s{i};
    if (!w.is_free(s)) continue;
    for (Action a : kAllActions) {
      const auto expect = w.true_transition_distribution(s, a);
      const auto row = t.transition_row(s, a);
      double total = 0.0;
      for (int k = 0; k < row.size; ++k) {
        const auto it = expect.find(row.next[static_cast<size_t>(k)]);
        const double p = it == expect.end() ? 0.0 : it->second;
        EXPECT_NEAR(row.prob[static_cast<size_t>(k)], p, 1e-12);
        total += row.prob[static_cast<size_t>(k)];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(TrueModelTable, ConvergedValuesMatchValueIteration) {
  const GridWorld w = open_world(5, 5);
  const LookupTable t = make_true_model_table(w, 0.9, 0.1, /*converge_values=*/true);
  const OracleSolution sol = value_iteration(w, 0.9, 1e-12);
  for (int i = 0; i < w.num_states(); ++i) {
    const StateId s{i};
    if (!w.is_free(s) || w.is_terminal(s)) continue;
    EXPECT_NEAR(t.value(s), sol.optimal_values[static_cast<size_t>(i)], 1e-9);
  }
}

}  // namespace
}  // namespace dualproc
