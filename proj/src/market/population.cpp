#include "evsim/market/population.hpp"

#include <string>

namespace evsim::market {

namespace {

constexpr std::uint64_t kFundamentalStream = 0x66756e64ULL;

}  // namespace

std::vector<std::unique_ptr<Agent>> build_population(const PopulationConfig& config, AgentId exchange,
                                                     const MarketHours& hours, SimTime origin, std::uint64_t seed) {
  if (config.noise_count < 0 || config.value_count < 0 || config.momentum_count < 0)
    throw ConfigError("population counts must be non-negative");

  std::vector<std::unique_ptr<Agent>> agents;
  agents.reserve(static_cast<std::size_t>(config.noise_count + config.value_count + config.momentum_count));
  for (int i = 0; i < config.noise_count; ++i)
    agents.push_back(std::make_unique<NoiseAgent>("NOISE_" + std::to_string(i), exchange, hours, config.noise));

  if (config.value_count > 0) {
    auto fundamental =
        std::make_shared<FundamentalProcess>(config.fundamental, origin, hash64(seed, kFundamentalStream));
    for (int i = 0; i < config.value_count; ++i)
      agents.push_back(
          std::make_unique<ValueAgent>("VALUE_" + std::to_string(i), exchange, hours, config.value, fundamental));
  }
  for (int i = 0; i < config.momentum_count; ++i)
    agents.push_back(
        std::make_unique<MomentumAgent>("MOMENTUM_" + std::to_string(i), exchange, hours, config.momentum));
  return agents;
}

KernelConfig make_market_kernel_config(const MarketSetup& setup, std::uint64_t seed,
                                       std::vector<std::unique_ptr<Agent>> extra,
                                       std::optional<std::size_t> interrupting_extra, MarketRoster* roster) {
  KernelConfig cfg;
  cfg.start_time = setup.start_time;
  cfg.end_time = setup.end_time;
  cfg.seed = seed;
  cfg.latency = setup.latency;

  const AgentId exchange{0};
  cfg.agents.push_back(std::make_unique<ExchangeAgent>(setup.exchange));
  auto background =
      build_population(setup.population, exchange, setup.exchange.hours, setup.exchange.hours.open_at, seed);
  const auto background_count = static_cast<std::uint32_t>(background.size());
  for (auto& a : background) cfg.agents.push_back(std::move(a));

  std::vector<AgentId> extra_ids;
  for (auto& a : extra) {
    extra_ids.push_back(AgentId{static_cast<std::uint32_t>(cfg.agents.size())});
    cfg.agents.push_back(std::move(a));
  }
  if (interrupting_extra) {
    if (*interrupting_extra >= extra_ids.size()) throw ConfigError("interrupting agent index out of range");
    cfg.interrupting_agent = extra_ids[*interrupting_extra];
  }
  if (roster != nullptr) *roster = MarketRoster{exchange, background_count, std::move(extra_ids)};
  return cfg;
}

}  // namespace evsim::market
