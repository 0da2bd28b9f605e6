#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dualproc/errors.hpp"
#include "dualproc/grid_world.hpp"

namespace dualproc {

// One row of the learned transition model: the candidate successors of
// (s, a) with probabilities derived from pseudo-counts.
struct TransitionRow {
  int size{0};
  std::array<StateId, 5> next{};
  std::array<double, 5> prob{};
};

// The shared internal model: transition pseudo-counts, state values V and
// action values Q in a single store that both the planning process and the
// reactive process read and write. V is derived, values(s) == max_a Q(s,a)
// after every public update. A table is owned by exactly one agent at a
// time; it may be handed between threads between trials but is never
// mutated concurrently.
class LookupTable {
 public:
  // Uniform transition mass over each state's candidate envelope (the four
  // blocked-move results plus self, one pseudo-count each); V and Q all
  // zero. Requires 0 < discount < 1 and 0 < learning_rate <= 1.
  LookupTable(const GridWorld& world, double discount, double learning_rate);

  int num_states() const { return num_states_; }
  double discount() const { return discount_; }
  double learning_rate() const { return learning_rate_; }
  // Learning-rate schedules (visit-count decay) are owned by callers.
  void set_learning_rate(double alpha);
  StateId terminal() const { return terminal_; }

  double q(StateId s, Action a) const {
    return q_[static_cast<size_t>(s.index) * kNumActions + static_cast<int>(a)];
  }
  double value(StateId s) const { return v_[static_cast<size_t>(s.index)]; }
  std::array<double, kNumActions> q_row(StateId s) const {
    std::array<double, kNumActions> row;
    const double* p = &q_[static_cast<size_t>(s.index) * kNumActions];
    std::copy(p, p + kNumActions, row.begin());
    return row;
  }

  // Candidate-successor envelope of s, deduplicated and sorted by index.
  std::span<const StateId> envelope(StateId s) const {
    const auto b = static_cast<size_t>(env_offset_[static_cast<size_t>(s.index)]);
    const auto e = static_cast<size_t>(env_offset_[static_cast<size_t>(s.index) + 1]);
    return {env_states_.data() + b, e - b};
  }

  // Pseudo-count of next under (s, a); 0 when next is outside the envelope.
  double count(StateId s, Action a, StateId next) const;

  TransitionRow transition_row(StateId s, Action a) const;

  // Records one observed transition: +1 pseudo-count on observed_next.
  // Throws ModelInconsistencyError when observed_next is outside the
  // envelope of s.
  void update_transition(StateId s, Action a, StateId observed_next);

  // Full expected backup of state s against the learned model:
  //   Q(s,a) <- sum_s' P(s'|s,a) * (reward_of(s') + discount * V(s'))
  // followed by V(s) <- max_a Q(s,a).
  template <class RewardFn>
  void bellman_backup(StateId s, RewardFn&& reward_of) {
    const auto succ = envelope(s);
    const int sz = static_cast<int>(succ.size());
    double* qrow = &q_[static_cast<size_t>(s.index) * kNumActions];
    for (int a = 0; a < kNumActions; ++a) {
      const double* c = counts_ptr(s, kAllActions[a]);
      double total = 0.0;
      for (int k = 0; k < sz; ++k) total += c[k];
      const double inv_total = 1.0 / total;
      double acc = 0.0;
      for (int k = 0; k < sz; ++k) {
        if (c[k] == 0.0) continue;
        const StateId sp = succ[static_cast<size_t>(k)];
        acc += c[k] * inv_total *
               (reward_of(sp) + discount_ * v_[static_cast<size_t>(sp.index)]);
      }
      qrow[a] = acc;
    }
    refresh_value(s);
  }

  // One-step temporal-difference update with greedy bootstrap; a terminal
  // next state bootstraps zero. V(s) is refreshed afterwards.
  void td_update(StateId s, Action a, double reward, StateId next);

  // Replaces the pseudo-count row of (s, a). Every successor must lie in
  // the envelope and total mass must be positive. Used to seed exact
  // models (oracles, fixtures).
  void set_transition_counts(StateId s, Action a,
                             std::span<const std::pair<StateId, double>> counts);

  friend bool operator==(const LookupTable&, const LookupTable&) = default;

  // Rebuilds a table from snapshot parts; validates shape and row masses.
  static LookupTable restore(int num_states, StateId terminal, double discount,
                             double learning_rate,
                             std::vector<std::vector<StateId>> envelopes,
                             const std::vector<std::array<std::vector<double>, kNumActions>>& counts,
                             std::vector<double> qvalues, std::vector<double> values);

 private:
  LookupTable() = default;

  const double* counts_ptr(StateId s, Action a) const {
    const auto base = static_cast<size_t>(env_offset_[static_cast<size_t>(s.index)]) * kNumActions;
    const auto sz = static_cast<size_t>(env_offset_[static_cast<size_t>(s.index) + 1] -
                                        env_offset_[static_cast<size_t>(s.index)]);
    return counts_.data() + base + static_cast<size_t>(a) * sz;
  }
  double* counts_ptr(StateId s, Action a) {
    return const_cast<double*>(std::as_const(*this).counts_ptr(s, a));
  }
  void refresh_value(StateId s) {
    const double* qrow = &q_[static_cast<size_t>(s.index) * kNumActions];
    v_[static_cast<size_t>(s.index)] = *std::max_element(qrow, qrow + kNumActions);
  }

  int num_states_{0};
  StateId terminal_{};
  double discount_{0.0};
  double learning_rate_{0.0};
  std::vector<std::int32_t> env_offset_;  // size num_states + 1
  std::vector<StateId> env_states_;       // flattened envelopes
  std::vector<double> counts_;            // (s, a, k) at offset(s)*4 + a*size(s) + k
  std::vector<double> q_;                 // num_states x 4
  std::vector<double> v_;                 // num_states
};

}  // namespace dualproc
