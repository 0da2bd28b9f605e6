#include "dualproc/lookup_table.hpp"

#include <stdexcept>
#include <string>

namespace dualproc {

LookupTable::LookupTable(const GridWorld& world, double discount, double learning_rate)
    : num_states_(world.num_states()),
      terminal_(world.goal()),
      discount_(discount),
      learning_rate_(learning_rate) {
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("discount must lie in (0, 1)");
  }
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("learning_rate must lie in (0, 1]");
  }
  env_offset_.reserve(static_cast<size_t>(num_states_) + 1);
  env_offset_.push_back(0);
  for (int i = 0; i < num_states_; ++i) {
    const StateId s{i};
    std::vector<StateId> env;
    if (world.is_free(s)) {
      env.push_back(s);
      for (Action a : kAllActions) env.push_back(world.move_result(s, a));
      std::sort(env.begin(), env.end());
      env.erase(std::unique(env.begin(), env.end()), env.end());
    } else {
      env.push_back(s);  // wall placeholder, never visited
    }
    env_states_.insert(env_states_.end(), env.begin(), env.end());
    env_offset_.push_back(static_cast<std::int32_t>(env_states_.size()));
  }
  counts_.assign(env_states_.size() * kNumActions, 1.0);
  q_.assign(static_cast<size_t>(num_states_) * kNumActions, 0.0);
  v_.assign(static_cast<size_t>(num_states_), 0.0);
}

void LookupTable::set_learning_rate(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("learning_rate must lie in (0, 1]");
  }
  learning_rate_ = alpha;
}

double LookupTable::count(StateId s, Action a, StateId next) const {
  const auto succ = envelope(s);
  const double* c = counts_ptr(s, a);
  for (size_t k = 0; k < succ.size(); ++k) {
    if (succ[k] == next) return c[k];
  }
  return 0.0;
}

TransitionRow LookupTable::transition_row(StateId s, Action a) const {
  const auto succ = envelope(s);
  const double* c = counts_ptr(s, a);
  TransitionRow row;
  row.size = static_cast<int>(succ.size());
  double total = 0.0;
  for (int k = 0; k < row.size; ++k) total += c[k];
  for (int k = 0; k < row.size; ++k) {
    row.next[static_cast<size_t>(k)] = succ[static_cast<size_t>(k)];
    row.prob[static_cast<size_t>(k)] = c[k] / total;
  }
  return row;
}

void LookupTable::update_transition(StateId s, Action a, StateId observed_next) {
  const auto succ = envelope(s);
  double* c = counts_ptr(s, a);
  for (size_t k = 0; k < succ.size(); ++k) {
    if (succ[k] == observed_next) {
      c[k] += 1.0;
      return;
    }
  }
  throw ModelInconsistencyError(
      "observed successor " + std::to_string(observed_next.index) +
      " is outside the candidate envelope of state " + std::to_string(s.index));
}

void LookupTable::td_update(StateId s, Action a, double reward, StateId next) {
  double bootstrap = 0.0;
  if (next != terminal_) {
    const double* nrow = &q_[static_cast<size_t>(next.index) * kNumActions];
    bootstrap = *std::max_element(nrow, nrow + kNumActions);
  }
  double& qa = q_[static_cast<size_t>(s.index) * kNumActions + static_cast<int>(a)];
  qa += learning_rate_ * (reward + discount_ * bootstrap - qa);
  refresh_value(s);
}

void LookupTable::set_transition_counts(
    StateId s, Action a, std::span<const std::pair<StateId, double>> counts) {
  const auto succ = envelope(s);
  std::array<double, 5> fresh{};
  double total = 0.0;
  for (const auto& [next, mass] : counts) {
    if (mass < 0.0) throw std::invalid_argument("negative transition mass");
    bool found = false;
    for (size_t k = 0; k < succ.size(); ++k) {
      if (succ[k] == next) {
        fresh[k] += mass;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ModelInconsistencyError("successor " + std::to_string(next.index) +
                                    " is outside the envelope of state " +
                                    std::to_string(s.index));
    }
    total += mass;
  }
  if (!(total > 0.0)) throw std::invalid_argument("transition row mass must be positive");
  double* c = counts_ptr(s, a);
  for (size_t k = 0; k < succ.size(); ++k) c[k] = fresh[k];
}

LookupTable LookupTable::restore(
    int num_states, StateId terminal, double discount, double learning_rate,
    std::vector<std::vector<StateId>> envelopes,
    const std::vector<std::array<std::vector<double>, kNumActions>>& counts,
    std::vector<double> qvalues, std::vector<double> values) {
  if (!(discount > 0.0 && discount < 1.0) ||
      !(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("snapshot has out-of-range parameters");
  }
  if (static_cast<int>(envelopes.size()) != num_states ||
      static_cast<int>(counts.size()) != num_states ||
      static_cast<int>(values.size()) != num_states ||
      static_cast<int>(qvalues.size()) != num_states * kNumActions) {
    throw std::invalid_argument("snapshot shape mismatch");
  }
  LookupTable t;
  t.num_states_ = num_states;
  t.terminal_ = terminal;
  t.discount_ = discount;
  t.learning_rate_ = learning_rate;
  t.env_offset_.push_back(0);
  for (int i = 0; i < num_states; ++i) {
    auto& env = envelopes[static_cast<size_t>(i)];
    if (env.empty() || !std::is_sorted(env.begin(), env.end())) {
      throw std::invalid_argument("snapshot envelope must be sorted and non-empty");
    }
    for (int a = 0; a < kNumActions; ++a) {
      const auto& row = counts[static_cast<size_t>(i)][static_cast<size_t>(a)];
      if (row.size() != env.size()) {
        throw std::invalid_argument("snapshot count row size mismatch");
      }
      double total = 0.0;
      for (double c : row) {
        if (c < 0.0) throw std::invalid_argument("snapshot has negative counts");
        total += c;
      }
      if (!(total > 0.0)) throw std::invalid_argument("snapshot row mass must be positive");
      t.counts_.insert(t.counts_.end(), row.begin(), row.end());
    }
    t.env_states_.insert(t.env_states_.end(), env.begin(), env.end());
    t.env_offset_.push_back(static_cast<std::int32_t>(t.env_states_.size()));
  }
  t.q_ = std::move(qvalues);
  t.v_ = std::move(values);
  return t;
}

}  // namespace dualproc
