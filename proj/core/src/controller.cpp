#include "dualproc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dualproc {

std::string_view to_string(Mode m) { return m == Mode::MB ? "MB" : "MF"; }

double WeightSchedule::at(int trial_index) const {
  if (constant.has_value()) return *constant;
  return std::max(0.0, 1.0 - static_cast<double>(trial_index) / horizon);
}

Mode select_mode_interleaved(int trial_index, int step_index, int factor,
                             int chunk_size) {
  if (trial_index < 1 || step_index < 0 || factor < 1 || chunk_size < 1) {
    throw std::invalid_argument("bad interleaving indices");
  }
  const int k = trial_index / factor;
  if (k <= 1) return Mode::MB;
  return (step_index % k == 0 || step_index % chunk_size == 0) ? Mode::MB
                                                               : Mode::MF;
}

ReliabilityTracker::ReliabilityTracker(double smoothing) : smoothing_(smoothing) {
  if (!(smoothing > 0.0 && smoothing <= 1.0)) {
    throw std::invalid_argument("reliability smoothing must lie in (0, 1]");
  }
}

void ReliabilityTracker::record(double mb_error, double mf_error) {
  mb_ = smoothing_ * mb_error + (1.0 - smoothing_) * mb_;
  mf_ = smoothing_ * mf_error + (1.0 - smoothing_) * mf_;
  has_data_ = true;
}

Mode ReliabilityTracker::preferred() const {
  if (!has_data_) return Mode::MB;
  return mf_ < mb_ ? Mode::MF : Mode::MB;
}

WeightedChoice select_mode_weighted(const LookupTable& table, const GridWorld& world,
                                    StateId s, int trial_index,
                                    const WeightSchedule& weights, int depth,
                                    Rng& tie_rng, std::uint64_t node_budget) {
  WeightedChoice choice;
  choice.root = dls_root_estimates(table, world, s, depth, node_budget);
  const double w = weights.at(trial_index);
  const auto q = table.q_row(s);
  std::array<double, kNumActions> blend{};
  for (int a = 0; a < kNumActions; ++a) {
    blend[static_cast<size_t>(a)] =
        w * choice.root.values[static_cast<size_t>(a)] +
        (1.0 - w) * q[static_cast<size_t>(a)];
  }
  choice.action = kAllActions[argmax_with_ties(blend, tie_rng)];
  choice.mode = w >= 0.5 ? Mode::MB : Mode::MF;
  return choice;
}

Controller::Controller(const ControllerSpec& spec, int depth,
                       std::uint64_t node_budget)
    : spec_(spec),
      depth_(depth),
      node_budget_(node_budget),
      reliability_(spec.reliability_smoothing) {
  if (depth < 1) throw std::invalid_argument("search depth must be >= 1");
  if (spec.factor < 1 || spec.chunk_size < 1) {
    throw std::invalid_argument("factor and chunk_size must be >= 1");
  }
}

ControllerStepOutcome Controller::step_mb(LookupTable& table, const GridWorld& world,
                                          StateId s, Rng& rng) const {
  const MbStepOutcome out = mb_step(table, world, s, depth_, rng, node_budget_);
  return {out.next, out.reward, out.done, Mode::MB,
          static_cast<double>(out.plan.nodes_expanded)};
}

ControllerStepOutcome Controller::step_mf(LookupTable& table, const GridWorld& world,
                                          StateId s, double epsilon,
                                          Rng& rng) const {
  const MfStepOutcome out = mf_step(table, world, s, epsilon, rng);
  return {out.next, out.reward, out.done, Mode::MF, 1.0};
}

ControllerStepOutcome Controller::step(LookupTable& table, const GridWorld& world,
                                       StateId s, int trial_index, int step_index,
                                       double epsilon, Rng& rng) {
  switch (spec_.kind) {
    case ControllerKind::PureMb:
      return step_mb(table, world, s, rng);
    case ControllerKind::PureMf:
      return step_mf(table, world, s, epsilon, rng);
    case ControllerKind::InterleavedDual: {
      const Mode m = select_mode_interleaved(trial_index, step_index, spec_.factor,
                                             spec_.chunk_size);
      return m == Mode::MB ? step_mb(table, world, s, rng)
                           : step_mf(table, world, s, epsilon, rng);
    }
    case ControllerKind::WeightedDual: {
      const WeightedChoice choice = select_mode_weighted(
          table, world, s, trial_index, spec_.weights, depth_, rng, node_budget_);
      const StepResult env = world.step(s, choice.action, rng);
      if (choice.mode == Mode::MB) {
        table.update_transition(s, choice.action, env.next);
        table.bellman_backup(s, [&world](StateId sp) { return world.reward_of(sp); });
      } else {
        table.td_update(s, choice.action, env.reward, env.next);
      }
      // Both streams were computed, so the planner's cost is charged either way.
      return {env.next, env.reward, env.done, choice.mode,
              static_cast<double>(choice.root.nodes_expanded)};
    }
    case ControllerKind::UncertaintyDual: {
      const Mode m = reliability_.preferred();
      Action a;
      ControllerStepOutcome out;
      if (m == Mode::MB) {
        const PlanResult plan = dls_plan(table, world, s, depth_, rng, node_budget_);
        a = plan.chosen_action;
        out.cost = static_cast<double>(plan.nodes_expanded);
      } else {
        if (epsilon > 0.0 && rng.uniform01() < epsilon) {
          a = kAllActions[rng.uniform_int(kNumActions)];
        } else {
          a = greedy_action(table, s, rng);
        }
        out.cost = 1.0;
      }
      const StepResult env = world.step(s, a, rng);
      // Both prediction errors are evaluated against the pre-update table.
      double p_observed = 0.0;
      const TransitionRow row = table.transition_row(s, a);
      for (int k = 0; k < row.size; ++k) {
        if (row.next[static_cast<size_t>(k)] == env.next) {
          p_observed = row.prob[static_cast<size_t>(k)];
          break;
        }
      }
      double bootstrap = 0.0;
      if (!world.is_terminal(env.next)) {
        const auto next_q = table.q_row(env.next);
        bootstrap = *std::max_element(next_q.begin(), next_q.end());
      }
      const double td_error =
          env.reward + table.discount() * bootstrap - table.q(s, a);

      if (m == Mode::MB) {
        table.update_transition(s, a, env.next);
        table.bellman_backup(s, [&world](StateId sp) { return world.reward_of(sp); });
      } else {
        table.td_update(s, a, env.reward, env.next);
      }
      reliability_.record(1.0 - p_observed, std::abs(td_error));
      out.next = env.next;
      out.reward = env.reward;
      out.done = env.done;
      out.mode = m;
      return out;
    }
  }
  throw std::logic_error("unknown controller kind");
}

}  // namespace dualproc
