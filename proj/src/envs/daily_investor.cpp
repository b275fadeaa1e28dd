#include "evsim/envs/daily_investor.hpp"

#include <string>

#include "evsim/envs/features.hpp"

namespace evsim::envs {

namespace rk = gym::raw_keys;

namespace {

gym::GymAgentConfig agent_config_for(const DailyInvestorConfig& c) {
  if (c.order_fixed_size <= 0) throw ConfigError("ORDER_FIXED_SIZE must be positive");
  if (c.timestep <= Duration::zero()) throw ConfigError("TIMESTEP_DURATION must be positive");
  if (c.k < 1) throw ConfigError("k must be at least 1");
  gym::GymAgentConfig a;
  a.first_wakeup = c.first_wakeup;
  a.timestep = c.timestep;
  a.book_levels = 3;
  a.mid_history = static_cast<std::size_t>(c.k) + 1;
  a.initial_cash = c.initial_cash;
  return a;
}

}  // namespace

DailyInvestor::DailyInvestor(DailyInvestorConfig config)
    : MarketsEnvironment(config.market, agent_config_for(config), config.market.exchange.hours.close_at),
      config_(std::move(config)) {}

gym::OrderCommands DailyInvestor::commands_for(int action) const {
  switch (action) {
    case kBuy: return {gym::PlaceMarket{market::Side::Buy, config_.order_fixed_size}};
    case kHold: return {gym::Noop{}};
    case kSell: return {gym::PlaceMarket{market::Side::Sell, config_.order_fixed_size}};
    default: throw UsageError("daily investor action must be 0, 1 or 2, got " + std::to_string(action));
  }
}

ActionBundle DailyInvestor::translate_action(int action, const RawState&) { return commands_for(action); }

std::vector<double> DailyInvestor::state_of(const RawState& raw) const {
  std::vector<double> s;
  s.reserve(state_size());
  s.push_back(static_cast<double>(raw.integer(rk::kHoldings)));
  s.push_back(imbalance(raw.integers(rk::kBidVolumes), raw.integers(rk::kAskVolumes), 3));
  s.push_back(spread_feature(raw));
  s.push_back(direction_feature(raw));
  for (double r : mid_returns(raw, config_.k)) s.push_back(r);
  return s;
}

double DailyInvestor::step_reward(const RawState& previous, const RawState& current) {
  return static_cast<double>(marked_to_market(current) - marked_to_market(previous));
}

bool DailyInvestor::episode_done(const RawState& raw) const {
  return SimTime{raw.integer(rk::kNow)} >= market_setup().exchange.hours.close_at;
}

void DailyInvestor::describe(const RawState& raw, gym::Info& info) const {
  info["time_ns"] = static_cast<double>(raw.integer(rk::kNow));
  info["cash"] = static_cast<double>(raw.integer(rk::kCash));
  info["holdings"] = static_cast<double>(raw.integer(rk::kHoldings));
  info["marked_to_market"] = static_cast<double>(marked_to_market(raw));
  if (const auto last = raw.optional_integer(rk::kLastTransaction))
    info["last_transaction"] = static_cast<double>(*last);
  else
    info["no_last_transaction"] = 1.0;
}

}  // namespace evsim::envs
