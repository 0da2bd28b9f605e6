#include "dualproc/grid_world.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dualproc {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::North: return "North";
    case Action::East: return "East";
    case Action::South: return "South";
    case Action::West: return "West";
  }
  return "?";
}

Action action_from_string(std::string_view name) {
  for (Action a : kAllActions) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown action name: " + std::string(name));
}

std::pair<Action, Action> lateral_of(Action a) {
  switch (a) {
    case Action::North: return {Action::West, Action::East};
    case Action::East: return {Action::North, Action::South};
    case Action::South: return {Action::East, Action::West};
    case Action::West: return {Action::South, Action::North};
  }
  return {Action::North, Action::South};
}

namespace {

Cell delta_of(Action a) {
  switch (a) {
    case Action::North: return {-1, 0};
    case Action::East: return {0, 1};
    case Action::South: return {1, 0};
    case Action::West: return {0, -1};
  }
  return {0, 0};
}

}  // namespace

GridWorld::GridWorld(const GridSpec& spec)
    : width_(spec.width),
      height_(spec.height),
      goal_reward_(spec.goal_reward),
      step_reward_(spec.step_reward),
      slip_prob_(spec.slip_prob) {
  if (width_ < 1 || height_ < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (slip_prob_ < 0.0 || slip_prob_ > 1.0) {
    throw std::invalid_argument("slip_prob must lie in [0, 1]");
  }
  wall_.assign(static_cast<size_t>(num_states()), 0);
  for (Cell w : spec.walls) {
    if (!in_bounds(w)) throw std::invalid_argument("wall cell out of bounds");
    wall_[static_cast<size_t>(state_at(w).index)] = 1;
  }
  if (!in_bounds(spec.start) || !in_bounds(spec.goal)) {
    throw std::invalid_argument("start/goal out of bounds");
  }
  start_ = state_at(spec.start);
  goal_ = state_at(spec.goal);
  if (is_wall(start_) || is_wall(goal_)) {
    throw std::invalid_argument("start/goal must not be walls");
  }
}

GridWorld GridWorld::from_map_text(const std::string& text, double goal_reward,
                                   double step_reward, double slip_prob) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw std::invalid_argument("map has no rows");

  GridSpec spec;
  spec.height = static_cast<int>(rows.size());
  spec.width = static_cast<int>(rows[0].size());
  spec.goal_reward = goal_reward;
  spec.step_reward = step_reward;
  spec.slip_prob = slip_prob;
  int starts = 0;
  int goals = 0;
  for (int r = 0; r < spec.height; ++r) {
    if (static_cast<int>(rows[r].size()) != spec.width) {
      throw std::invalid_argument("map rows have unequal widths");
    }
    for (int c = 0; c < spec.width; ++c) {
      switch (rows[r][c]) {
        case '.': break;
        case '#': spec.walls.push_back({r, c}); break;
        case 'S': spec.start = {r, c}; ++starts; break;
        case 'G': spec.goal = {r, c}; ++goals; break;
        default:
          throw std::invalid_argument("map contains invalid character '" +
                                      std::string(1, rows[r][c]) + "'");
      }
    }
  }
  if (starts != 1 || goals != 1) {
    throw std::invalid_argument("map must contain exactly one S and one G");
  }
  return GridWorld(spec);
}

GridWorld GridWorld::from_map_file(const std::string& path, double goal_reward,
                                   double step_reward, double slip_prob) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_map_text(buf.str(), goal_reward, step_reward, slip_prob);
}

StateId GridWorld::move_result(StateId s, Action a) const {
  const Cell from = cell_of(s);
  const Cell d = delta_of(a);
  const Cell to{from.row + d.row, from.col + d.col};
  if (!in_bounds(to)) return s;
  const StateId t = state_at(to);
  return is_wall(t) ? s : t;
}

void GridWorld::require_free(StateId s) const {
  if (!valid_state(s) || is_wall(s)) {
    throw std::invalid_argument("state " + std::to_string(s.index) +
                                " is not a free in-bounds cell");
  }
}

StepResult GridWorld::step(StateId s, Action a, Rng& rng) const {
  require_free(s);
  Action actual = a;
  if (slip_prob_ > 0.0) {
    const double u = rng.uniform01();
    if (u >= 1.0 - slip_prob_) {
      const auto [left, right] = lateral_of(a);
      actual = (u < 1.0 - slip_prob_ / 2.0) ? left : right;
    }
  }
  const StateId next = move_result(s, actual);
  return {next, reward_of(next), next == goal_};
}

std::map<StateId, double> GridWorld::true_transition_distribution(StateId s,
                                                                  Action a) const {
  require_free(s);
  std::map<StateId, double> dist;
  const auto [left, right] = lateral_of(a);
  if (slip_prob_ < 1.0) dist[move_result(s, a)] += 1.0 - slip_prob_;
  if (slip_prob_ > 0.0) {
    dist[move_result(s, left)] += slip_prob_ / 2.0;
    dist[move_result(s, right)] += slip_prob_ / 2.0;
  }
  return dist;
}

bool GridWorld::has_isolated_cells() const {
  for (int i = 0; i < num_states(); ++i) {
    const StateId s{i};
    if (is_wall(s)) continue;
    bool connected = false;
    for (Action a : kAllActions) {
      if (move_result(s, a) != s) {
        connected = true;
        break;
      }
    }
    if (!connected && num_states() > 1) return true;
  }
  return false;
}

}  // namespace dualproc
