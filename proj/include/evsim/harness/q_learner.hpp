#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "evsim/harness/policy.hpp"

namespace evsim::harness {

/// Uniform bins over [lo, hi]; values outside are clamped into the end bins.
/// bins == 1 ignores the component.
struct BinSpec {
  double lo{0.0};
  double hi{1.0};
  int bins{1};
};

inline constexpr std::size_t kMaxTabularStates = 1'000'000;

struct QLearnerSpec {
  std::vector<BinSpec> bins;
  /// Learning rate, linear in the episode index from start to end.
  double alpha_start{0.1};
  double alpha_end{0.01};
  /// Exploration, linear from start to end over the first decay_fraction of
  /// the episodes, then held at end.
  double epsilon_start{1.0};
  double epsilon_end{0.02};
  double epsilon_decay_fraction{0.8};
  double gamma{1.0};
};

/// Default bins for a registered environment name.
std::vector<BinSpec> default_bins(const std::string& env_name, int k = 3);

class StateDiscretizer {
 public:
  /// Throws ConfigError on bins < 1, hi <= lo, or more than kMaxTabularStates states.
  explicit StateDiscretizer(std::vector<BinSpec> bins);

  std::size_t index(const std::vector<double>& state) const;
  std::size_t state_count() const { return state_count_; }
  std::size_t dimensions() const { return bins_.size(); }

 private:
  std::vector<BinSpec> bins_;
  std::vector<std::size_t> strides_;
  std::size_t state_count_{1};
};

/// Epsilon-greedy tabular Q-learning:
///   Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)),  target r on terminal steps.
class TabularQLearner final : public Policy {
 public:
  TabularQLearner(QLearnerSpec spec, int action_count);

  void begin_episode(int episode, int total_episodes) override;
  int act(const std::vector<double>& state, std::mt19937_64& rng) override;
  void observe(const Transition& t) override;

  /// Highest-valued action; ties go to the lowest index.
  int greedy_action(std::size_t state_index) const;
  int greedy_action(const std::vector<double>& state) const { return greedy_action(discretizer_.index(state)); }

  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }
  const StateDiscretizer& discretizer() const { return discretizer_; }
  const std::vector<double>& q_values() const { return q_; }
  const std::vector<std::uint32_t>& visits() const { return visits_; }
  int action_count() const { return actions_; }
  const QLearnerSpec& spec() const { return spec_; }

 private:
  double& q(std::size_t s, int a) { return q_[s * static_cast<std::size_t>(actions_) + static_cast<std::size_t>(a)]; }
  double max_q(std::size_t s) const;

  QLearnerSpec spec_;
  int actions_;
  StateDiscretizer discretizer_;
  std::vector<double> q_;
  std::vector<std::uint32_t> visits_;
  double alpha_;
  double epsilon_;
};

}  // namespace evsim::harness
