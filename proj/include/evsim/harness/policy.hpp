#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace evsim::harness {

struct Transition {
  const std::vector<double>& state;
  int action;
  double reward;
  const std::vector<double>& next_state;
  bool done;
};

/// Chooses actions from environment state vectors. Learning policies update
/// themselves in observe().
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode(int /*episode*/, int /*total_episodes*/) {}
  virtual int act(const std::vector<double>& state, std::mt19937_64& rng) = 0;
  virtual void observe(const Transition&) {}
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(int action_count);
  int act(const std::vector<double>& state, std::mt19937_64& rng) override;

 private:
  int action_count_;
};

class FixedPolicy final : public Policy {
 public:
  explicit FixedPolicy(int action) : action_(action) {}
  int act(const std::vector<double>&, std::mt19937_64&) override { return action_; }

 private:
  int action_;
};

}  // namespace evsim::harness
