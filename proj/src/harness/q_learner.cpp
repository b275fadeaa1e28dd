#include "evsim/harness/q_learner.hpp"

#include <algorithm>
#include <cmath>

#include "evsim/kernel/errors.hpp"

namespace evsim::harness {

std::vector<BinSpec> default_bins(const std::string& env_name, int k) {
  std::vector<BinSpec> out;
  if (env_name == "markets-daily_investor-v0") {
    out = {
        {-250.0, 250.0, 5},  // holdings: <= -200, -100, 0, 100, >= 200 at the default size
        {0.0, 1.0, 4},       // imbalance
        {0.5, 6.5, 3},       // spread: 1-2, 3-4, >= 5
        {-3.0, 3.0, 3},      // mid - last trade
    };
    for (int i = 0; i < k; ++i) out.push_back({-30.0, 30.0, 3});
  } else if (env_name == "markets-execution-v0") {
    out = {
        {0.0, 1.0, 1},    // holdings_pct (carried by difference_pct)
        {0.0, 1.0, 4},    // time_pct
        {-0.5, 0.5, 5},   // difference_pct
        {0.0, 1.0, 3},    // imbalance, 5 levels
        {0.0, 1.0, 1},    // imbalance, all levels
        {-30.0, 30.0, 3}, // price impact
        {0.5, 6.5, 3},    // spread
        {-3.0, 3.0, 3},   // mid - last trade
    };
    for (int i = 0; i < k; ++i) out.push_back({-30.0, 30.0, 1});
  } else {
    throw ConfigError("no default bins for environment '" + env_name + "'");
  }
  return out;
}

StateDiscretizer::StateDiscretizer(std::vector<BinSpec> bins) : bins_(std::move(bins)) {
  if (bins_.empty()) throw ConfigError("discretizer needs at least one component");
  strides_.resize(bins_.size());
  for (std::size_t i = bins_.size(); i-- > 0;) {
    const auto& b = bins_[i];
    if (b.bins < 1) throw ConfigError("bins must be at least 1 (component " + std::to_string(i) + ")");
    if (!(b.hi > b.lo)) throw ConfigError("bin range needs hi > lo (component " + std::to_string(i) + ")");
    strides_[i] = state_count_;
    state_count_ *= static_cast<std::size_t>(b.bins);
    if (state_count_ > kMaxTabularStates)
      throw ConfigError("discretization has more than " + std::to_string(kMaxTabularStates) + " states");
  }
}

std::size_t StateDiscretizer::index(const std::vector<double>& state) const {
  if (state.size() != bins_.size())
    throw UsageError("state has " + std::to_string(state.size()) + " components, discretizer expects " +
                     std::to_string(bins_.size()));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    const auto& b = bins_[i];
    if (b.bins == 1) continue;
    const double width = (b.hi - b.lo) / b.bins;
    const auto bin = static_cast<int>(std::floor((state[i] - b.lo) / width));
    idx += static_cast<std::size_t>(std::clamp(bin, 0, b.bins - 1)) * strides_[i];
  }
  return idx;
}

TabularQLearner::TabularQLearner(QLearnerSpec spec, int action_count)
    : spec_(std::move(spec)),
      actions_(action_count),
      discretizer_(spec_.bins),
      q_(discretizer_.state_count() * static_cast<std::size_t>(action_count), 0.0),
      visits_(discretizer_.state_count() * static_cast<std::size_t>(action_count), 0),
      alpha_(spec_.alpha_start),
      epsilon_(spec_.epsilon_start) {
  if (actions_ < 1) throw ConfigError("q-learning needs at least one action");
  for (double e : {spec_.epsilon_start, spec_.epsilon_end})
    if (e < 0.0 || e > 1.0) throw ConfigError("epsilon must lie in [0, 1]");
  for (double a : {spec_.alpha_start, spec_.alpha_end})
    if (a < 0.0 || a > 1.0) throw ConfigError("learning rate must lie in [0, 1]");
  if (spec_.gamma < 0.0 || spec_.gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  if (spec_.epsilon_decay_fraction <= 0.0 || spec_.epsilon_decay_fraction > 1.0)
    throw ConfigError("epsilon_decay_fraction must lie in (0, 1]");
}

void TabularQLearner::begin_episode(int episode, int total_episodes) {
  const double span = std::max(1, total_episodes - 1);
  const double progress = std::clamp(episode / span, 0.0, 1.0);
  alpha_ = std::lerp(spec_.alpha_start, spec_.alpha_end, progress);
  const double decay_span = spec_.epsilon_decay_fraction * span;
  const double decay = decay_span > 0.0 ? std::clamp(episode / decay_span, 0.0, 1.0) : 1.0;
  epsilon_ = std::lerp(spec_.epsilon_start, spec_.epsilon_end, decay);
}

double TabularQLearner::max_q(std::size_t s) const {
  const auto* row = &q_[s * static_cast<std::size_t>(actions_)];
  return *std::max_element(row, row + actions_);
}

int TabularQLearner::greedy_action(std::size_t s) const {
  const auto* row = &q_[s * static_cast<std::size_t>(actions_)];
  return static_cast<int>(std::max_element(row, row + actions_) - row);
}

int TabularQLearner::act(const std::vector<double>& state, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < epsilon_) return std::uniform_int_distribution<int>(0, actions_ - 1)(rng);
  return greedy_action(discretizer_.index(state));
}

void TabularQLearner::observe(const Transition& t) {
  const std::size_t s = discretizer_.index(t.state);
  double target = t.reward;
  if (!t.done) target += spec_.gamma * max_q(discretizer_.index(t.next_state));
  double& value = q(s, t.action);
  value += alpha_ * (target - value);
  ++visits_[s * static_cast<std::size_t>(actions_) + static_cast<std::size_t>(t.action)];
}

}  // namespace evsim::harness
