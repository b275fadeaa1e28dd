#include "evsim/harness/policy.hpp"

#include "evsim/kernel/errors.hpp"

namespace evsim::harness {

RandomPolicy::RandomPolicy(int action_count) : action_count_(action_count) {
  if (action_count_ < 1) throw ConfigError("random policy needs at least one action");
}

int RandomPolicy::act(const std::vector<double>&, std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, action_count_ - 1)(rng);
}

}  // namespace evsim::harness
