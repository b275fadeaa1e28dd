#pragma once

#include "evsim/gym/environment.hpp"
#include "evsim/gym/markets_gym_agent.hpp"
#include "evsim/market/population.hpp"

namespace evsim::gym {

/// An environment whose kernel is the standard market (exchange plus
/// background population) with one MarketsGymAgent appended to the roster.
class MarketsEnvironment : public Environment {
 public:
  const market::MarketSetup& market_setup() const { return setup_; }

 protected:
  /// The kernel runs from setup.start_time to `kernel_end`, inclusive.
  MarketsEnvironment(market::MarketSetup setup, GymAgentConfig agent, SimTime kernel_end);

  KernelConfig make_kernel_config(std::uint64_t kernel_seed) override;

  const GymAgentConfig& agent_config() const { return agent_; }

 private:
  market::MarketSetup setup_;
  GymAgentConfig agent_;
};

}  // namespace evsim::gym
