#include "evsim/gym/markets_environment.hpp"

namespace evsim::gym {

MarketsEnvironment::MarketsEnvironment(market::MarketSetup setup, GymAgentConfig agent, SimTime kernel_end)
    : setup_(std::move(setup)), agent_(agent) {
  setup_.end_time = kernel_end;
  if (agent_.first_wakeup < setup_.start_time || agent_.first_wakeup > kernel_end)
    throw ConfigError("first gym wakeup must fall inside the simulated window");
}

KernelConfig MarketsEnvironment::make_kernel_config(std::uint64_t kernel_seed) {
  std::vector<std::unique_ptr<Agent>> extra;
  extra.push_back(std::make_unique<MarketsGymAgent>(agent_));
  market::MarketRoster roster;
  KernelConfig cfg = market::make_market_kernel_config(setup_, kernel_seed, std::move(extra), 0, &roster);
  if (roster.exchange != agent_.exchange) throw ConfigError("gym agent is not addressed to the exchange");
  return cfg;
}

}  // namespace evsim::gym
