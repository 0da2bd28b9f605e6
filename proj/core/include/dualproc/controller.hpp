#pragma once

#include <cstdint>
#include <optional>

#include "dualproc/grid_world.hpp"
#include "dualproc/lookup_table.hpp"
#include "dualproc/model_based.hpp"
#include "dualproc/model_free.hpp"
#include "dualproc/rng.hpp"

namespace dualproc {

enum class Mode : std::uint8_t { MB = 0, MF = 1 };

std::string_view to_string(Mode m);

enum class ControllerKind {
  PureMb,
  PureMf,
  InterleavedDual,
  WeightedDual,
  UncertaintyDual,
};

// w_MB as a function of the 1-based trial index: a fixed constant when set,
// otherwise the linear hand-off max(0, 1 - i/horizon).
struct WeightSchedule {
  std::optional<double> constant{};
  double horizon = 50.0;

  double at(int trial_index) const;
};

struct ControllerSpec {
  ControllerKind kind = ControllerKind::InterleavedDual;
  int factor = 5;               // trial-index divisor (InterleavedDual)
  int chunk_size = 4;           // periodic MB cadence (InterleavedDual)
  WeightSchedule weights{};     // WeightedDual
  double reliability_smoothing = 0.5;  // UncertaintyDual, in (0, 1]
};

// The interleaving rule, a pure function of indices. With k = i / factor
// (integer division): k <= 1 means the trial runs fully model-based (this
// also covers the undefined j mod 0 case); otherwise the step is
// model-based iff j mod k == 0 or j mod chunk_size == 0.
Mode select_mode_interleaved(int trial_index, int step_index, int factor,
                             int chunk_size);

// Exponentially smoothed mean absolute prediction error per process, both
// streams updated from every observed transition regardless of which one
// acted (a stream that never executes would otherwise never accumulate
// evidence). Smoothing starts from zero:
//   s <- smoothing * err + (1 - smoothing) * s.
// The model-based error of a transition is 1 - P_model(observed successor);
// the model-free error is |TD error|.
class ReliabilityTracker {
 public:
  explicit ReliabilityTracker(double smoothing);

  void record(double mb_error, double mf_error);
  // The process with strictly smaller smoothed error; MB on ties and on
  // empty history.
  Mode preferred() const;

  bool has_data() const { return has_data_; }
  double mb_error() const { return mb_; }
  double mf_error() const { return mf_; }

 private:
  double smoothing_;
  double mb_{0.0};
  double mf_{0.0};
  bool has_data_{false};
};

struct WeightedChoice {
  Action action{Action::North};
  Mode mode{Mode::MB};
  RootEstimates root{};
};

// Weighted-stream decision: blend(a) = w * Q_MB(s,a) + (1-w) * Q(s,a) with
// Q_MB the depth-limited root estimates; argmax with seeded ties (the only
// randomness consumed, so degenerate weights replay the pure selectors'
// draws exactly). The mode tag attributes the step to MB when w >= 0.5.
// The planner runs every call, so the step's simulated cost is always the
// planner's.
WeightedChoice select_mode_weighted(const LookupTable& table, const GridWorld& world,
                                    StateId s, int trial_index,
                                    const WeightSchedule& weights, int depth,
                                    Rng& tie_rng,
                                    std::uint64_t node_budget = kDefaultNodeBudget);

struct ControllerStepOutcome {
  StateId next{};
  double reward{0.0};
  bool done{false};
  Mode mode{Mode::MB};
  double cost{1.0};  // effort units: nodes expanded for MB, 1 for MF
};

// Dispatches each within-trial step to the model-based or the model-free
// process per the configured rule and applies that process's table update.
// Owns the uncertainty history; one controller instance drives one trial
// sequence.
class Controller {
 public:
  Controller(const ControllerSpec& spec, int depth,
             std::uint64_t node_budget = kDefaultNodeBudget);

  ControllerStepOutcome step(LookupTable& table, const GridWorld& world, StateId s,
                             int trial_index, int step_index, double epsilon,
                             Rng& rng);

  const ControllerSpec& spec() const { return spec_; }

 private:
  ControllerStepOutcome step_mb(LookupTable& table, const GridWorld& world,
                                StateId s, Rng& rng) const;
  ControllerStepOutcome step_mf(LookupTable& table, const GridWorld& world,
                                StateId s, double epsilon, Rng& rng) const;

  ControllerSpec spec_;
  int depth_;
  std::uint64_t node_budget_;
  ReliabilityTracker reliability_;
};

}  // namespace dualproc
