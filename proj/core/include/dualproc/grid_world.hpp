#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dualproc/rng.hpp"

namespace dualproc {

struct Cell {
  int row{0};
  int col{0};
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

// Dense row-major index of a grid cell. Wall cells have valid ids but are
// never occupied.
struct StateId {
  std::int32_t index{-1};
  friend constexpr auto operator<=>(const StateId&, const StateId&) = default;
};

enum class Action : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr int kNumActions = 4;
inline constexpr Action kAllActions[kNumActions] = {Action::North, Action::East,
                                                    Action::South, Action::West};

std::string_view to_string(Action a);
Action action_from_string(std::string_view name);

// The two perpendicular directions of an intended move, in (left, right)
// order relative to the heading. These are the slip outcomes.
std::pair<Action, Action> lateral_of(Action a);

struct StepResult {
  StateId next{};
  double reward{0.0};
  bool done{false};
};

struct GridSpec {
  int width = 10;
  int height = 10;
  Cell start{0, 0};
  Cell goal{9, 9};
  std::vector<Cell> walls{};
  double goal_reward = 1.0;
  double step_reward = 0.0;
  double slip_prob = 0.0;
};

// The task environment: a four-connected grid with a single terminal goal
// cell. Moving into a wall or out of bounds leaves the state unchanged.
// With slip_prob > 0 the intended move is diverted to one of the two
// lateral moves with probability slip_prob/2 each. Immutable after
// construction and safe to share across threads; callers own their random
// sources.
class GridWorld {
 public:
  explicit GridWorld(const GridSpec& spec);

  // Plain-text map format: one row per line, '.' free, '#' wall, 'S' start,
  // 'G' goal; exactly one S and one G.
  static GridWorld from_map_text(const std::string& text, double goal_reward = 1.0,
                                 double step_reward = 0.0, double slip_prob = 0.0);
  static GridWorld from_map_file(const std::string& path, double goal_reward = 1.0,
                                 double step_reward = 0.0, double slip_prob = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_states() const { return width_ * height_; }
  StateId start() const { return start_; }
  StateId goal() const { return goal_; }
  double goal_reward() const { return goal_reward_; }
  double step_reward() const { return step_reward_; }
  double slip_prob() const { return slip_prob_; }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  bool valid_state(StateId s) const {
    return s.index >= 0 && s.index < num_states();
  }
  bool is_wall(StateId s) const { return wall_[static_cast<size_t>(s.index)] != 0; }
  bool is_free(StateId s) const { return valid_state(s) && !is_wall(s); }
  bool is_terminal(StateId s) const { return s == goal_; }

  StateId state_at(Cell c) const { return StateId{c.row * width_ + c.col}; }
  Cell cell_of(StateId s) const { return Cell{s.index / width_, s.index % width_}; }

  double reward_of(StateId landed) const {
    return landed == goal_ ? goal_reward_ : step_reward_;
  }

  // Where a one-cell move in a's direction from s ends up; blocked moves
  // stay put.
  StateId move_result(StateId s, Action a) const;

  // One environment transition. Throws std::invalid_argument if s is a wall
  // or out of bounds. Consumes randomness only when slip_prob > 0.
  StepResult step(StateId s, Action a, Rng& rng) const;

  // Exact outcome distribution of (s, a); masses of blocked outcomes merge
  // onto the unmoved state. Sums to 1.
  std::map<StateId, double> true_transition_distribution(StateId s, Action a) const;

  // True when some free cell has no in-bounds free neighbor. Requested
  // check, not enforced at construction.
  bool has_isolated_cells() const;

 private:
  void require_free(StateId s) const;

  int width_;
  int height_;
  StateId start_;
  StateId goal_;
  double goal_reward_;
  double step_reward_;
  double slip_prob_;
  std::vector<std::uint8_t> wall_;
};

}  // namespace dualproc
