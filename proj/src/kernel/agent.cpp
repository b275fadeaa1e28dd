#include "evsim/kernel/agent.hpp"

namespace evsim {

void Agent::attach(AgentId id, std::uint64_t rng_seed) {
  id_ = id;
  rng_.seed(rng_seed);
}

}  // namespace evsim
