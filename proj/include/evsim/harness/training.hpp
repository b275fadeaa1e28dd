#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "json.hpp"

#include "evsim/harness/config.hpp"
#include "evsim/harness/episode_runner.hpp"
#include "evsim/harness/q_learner.hpp"

namespace evsim::harness {

struct SampleStats {
  std::size_t n{0};
  double mean{0.0};
  double sd{0.0};
  /// sd / sqrt(n).
  double se{0.0};
};

SampleStats summarize(std::span<const double> values);
/// Standard error of a difference of two independent means.
double welch_se(const SampleStats& a, const SampleStats& b);
std::vector<double> returns_of(std::span<const EpisodeLog> logs);

struct SeedTraining {
  std::uint64_t seed{0};
  /// Episode returns in training order (the learning curve).
  std::vector<double> returns;
  std::vector<double> epsilons;
  std::unique_ptr<TabularQLearner> learner;
  std::vector<EpisodeLog> logs;
};

/// Tabular Q-learning on every seed of `config` (policy must be q-learning).
/// Seeds train concurrently when `parallel`; results do not depend on it.
std::vector<SeedTraining> train(const RunConfig& config, bool record_steps = false, bool parallel = true);

/// Greedy action per visited state: index, per-component bin, action, Q-values, visits.
nlohmann::json greedy_table(const TabularQLearner& learner);

}  // namespace evsim::harness
