#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace dualproc {

// splitmix64 finalizer; decorrelates small user-facing seed integers before
// they reach the engine.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random source. Sampling helpers are implemented by hand so
// identical seeds give identical streams on every platform
// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n); n >= 1. Fixed-point multiply, no rejection.
  int uniform_int(int n) {
    const auto wide = static_cast<unsigned __int128>(next_u64());
    return static_cast<int>((wide * static_cast<unsigned __int128>(n)) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

// First-index argmax, for bitwise-reproducible evaluation rollouts.
inline int argmax_first_index(std::span<const double> scores) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

// Argmax with randomized exact-tie resolution. A unique maximum consumes no
// randomness; a k-way tie consumes exactly one draw. Shared by the planner
// root, the greedy selector and the weighted blend so that equal score
// vectors produce identical choices from identically seeded sources.
inline int argmax_with_ties(std::span<const double> scores, Rng& rng) {
  const int n = static_cast<int>(scores.size());
  const int best = argmax_first_index(scores);
  int ties = 0;
  for (int i = 0; i < n; ++i) {
    if (scores[i] == scores[best]) ++ties;
  }
  if (ties == 1) return best;
  int pick = rng.uniform_int(ties);
  for (int i = 0; i < n; ++i) {
    if (scores[i] == scores[best] && pick-- == 0) return i;
  }
  return best;  // unreachable
}

}  // namespace dualproc
