#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "evsim/kernel/kernel.hpp"
#include "evsim/market/background_agents.hpp"
#include "evsim/market/exchange_agent.hpp"
#include "evsim/market/fundamental.hpp"

namespace evsim::market {

struct PopulationConfig {
  int noise_count{100};
  NoiseAgentConfig noise;
  int value_count{10};
  ValueAgentConfig value;
  int momentum_count{5};
  MomentumAgentConfig momentum;
  FundamentalConfig fundamental;
};

/// Everything needed to stand up one simulated trading day.
struct MarketSetup {
  ExchangeConfig exchange;
  PopulationConfig population;
  LatencySpec latency;
  SimTime start_time{clock_time(9, 0)};
  SimTime end_time{clock_time(16, 0)};
};

/// Roster positions of a market kernel built by make_market_kernel_config.
struct MarketRoster {
  AgentId exchange{0};
  std::uint32_t background_count{0};
  /// Agents passed as `extra`, in order, after the background population.
  std::vector<AgentId> extra;
};

/// Background traders, in roster order noise, value, momentum. The value
/// agents share one fundamental process seeded from `seed`.
std::vector<std::unique_ptr<Agent>> build_population(const PopulationConfig& config, AgentId exchange,
                                                     const MarketHours& hours, SimTime origin, std::uint64_t seed);

/// Exchange first, then the background population, then `extra` agents.
KernelConfig make_market_kernel_config(const MarketSetup& setup, std::uint64_t seed,
                                       std::vector<std::unique_ptr<Agent>> extra = {},
                                       std::optional<std::size_t> interrupting_extra = std::nullopt,
                                       MarketRoster* roster = nullptr);

}  // namespace evsim::market
