#pragma once

#include <stdexcept>

namespace dualproc {

// Observed successor lies outside the candidate envelope of (s, a): the
// environment and the internal model disagree about world geometry.
class ModelInconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A depth-limited search would expand more nodes than the configured cap.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// BFS found no path from start to goal.
class UnreachableGoalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed, out-of-range or unknown configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dualproc
