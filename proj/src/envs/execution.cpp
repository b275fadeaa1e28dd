#include "evsim/envs/execution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evsim/envs/features.hpp"

namespace evsim::envs {

namespace rk = gym::raw_keys;

namespace {

gym::GymAgentConfig agent_config_for(const ExecutionConfig& c) {
  if (c.parent_order_size <= 0) throw ConfigError("PARENT_ORDER_SIZE must be positive");
  if (c.child_order_size <= 0 || c.child_order_size > c.parent_order_size)
    throw ConfigError("CHILD_ORDER_SIZE must lie in [1, PARENT_ORDER_SIZE]");
  if (c.time_window <= Duration::zero()) throw ConfigError("TIME_WINDOW must be positive");
  if (c.timestep <= Duration::zero()) throw ConfigError("TIMESTEP_DURATION must be positive");
  if (c.penalty < 0.0) throw ConfigError("PENALTY must be non-negative");
  if (c.k < 1) throw ConfigError("k must be at least 1");
  const auto& hours = c.market.exchange.hours;
  if (c.starting_time < hours.open_at || c.starting_time + c.time_window > hours.close_at)
    throw ConfigError("execution window must fit inside market hours");
  gym::GymAgentConfig a;
  a.first_wakeup = c.starting_time;
  a.timestep = c.timestep;
  a.book_levels = 5;
  a.mid_history = static_cast<std::size_t>(c.k) + 1;
  return a;
}

}  // namespace

Execution::Execution(ExecutionConfig config)
    : MarketsEnvironment(config.market, agent_config_for(config), config.starting_time + config.time_window),
      config_(std::move(config)) {}

double Execution::terminal_update(market::Quantity executed) const {
  const double shortfall = static_cast<double>(std::max<market::Quantity>(0, config_.parent_order_size - executed));
  if (shortfall == 0.0) return 0.0;
  const double magnitude = std::abs(config_.penalty * shortfall);
  return -(config_.scale_penalty ? magnitude / static_cast<double>(config_.parent_order_size) : magnitude);
}

gym::OrderCommands Execution::commands_for(int action, const RawState& current) const {
  if (action == kDoNothing) return {};
  if (action != kMarket && action != kLimit)
    throw UsageError("execution action must be 0, 1 or 2, got " + std::to_string(action));

  const market::Quantity remaining = config_.parent_order_size - executed_qty_;
  if (remaining <= 0) return {};
  const market::Quantity qty = std::min(config_.child_order_size, remaining);

  if (action == kMarket) return {gym::CancelAll{}, gym::PlaceMarket{config_.direction, qty}};
  const auto near_touch = config_.direction == market::Side::Buy ? best_bid(current) : best_ask(current);
  if (!near_touch) return {};
  return {gym::CancelAll{}, gym::PlaceLimit{config_.direction, qty, *near_touch}};
}

void Execution::begin_episode(const RawState& first) {
  executed_qty_ = 0;
  pnl_cents_ = 0.0;
  child_sent_ = 0;
  terminal_ = 0.0;
  if (const auto mid = mid_price(first))
    entry_price_ = *mid;
  else if (const auto last = first.optional_integer(rk::kLastTransaction))
    entry_price_ = static_cast<double>(*last);
  else
    throw StateError("no mid or last trade at the execution start; entry price undefined");
}

ActionBundle Execution::translate_action(int action, const RawState& current) {
  auto commands = commands_for(action, current);
  child_sent_ = 0;
  for (const auto& c : commands) {
    if (const auto* m = std::get_if<gym::PlaceMarket>(&c)) child_sent_ += m->qty;
    if (const auto* l = std::get_if<gym::PlaceLimit>(&c)) child_sent_ += l->qty;
  }
  return commands;
}

std::vector<double> Execution::state_of(const RawState& raw) const {
  const double parent = static_cast<double>(config_.parent_order_size);
  const double elapsed = static_cast<double>((SimTime{raw.integer(rk::kNow)} - config_.starting_time).count());
  const double holdings_pct = static_cast<double>(executed_qty_) / parent;
  const double time_pct = elapsed / static_cast<double>(config_.time_window.count());
  const auto mid = mid_price(raw);

  std::vector<double> s;
  s.reserve(state_size());
  s.push_back(holdings_pct);
  s.push_back(time_pct);
  s.push_back(holdings_pct - time_pct);
  s.push_back(imbalance(raw.integers(rk::kBidVolumes), raw.integers(rk::kAskVolumes), 5));
  s.push_back(imbalance_totals(raw.integer(rk::kBidVolumeTotal), raw.integer(rk::kAskVolumeTotal)));
  s.push_back(mid ? *mid - entry_price_ : 0.0);
  s.push_back(spread_feature(raw));
  s.push_back(direction_feature(raw));
  for (double r : mid_returns(raw, config_.k)) s.push_back(r);
  return s;
}

double Execution::step_reward(const RawState&, const RawState& current) {
  const auto& prices = current.integers(rk::kFillPrices);
  const auto& qtys = current.integers(rk::kFillQtys);
  const auto& sides = current.integers(rk::kFillSides);
  const int numside = market::sign(config_.direction);
  double pnl = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (sides[i] != numside) continue;
    pnl += numside * (entry_price_ - static_cast<double>(prices[i])) * static_cast<double>(qtys[i]);
    executed_qty_ += qtys[i];
  }
  pnl_cents_ += pnl;
  return pnl / static_cast<double>(config_.parent_order_size);
}

bool Execution::episode_done(const RawState& raw) const {
  return executed_qty_ >= config_.parent_order_size ||
         SimTime{raw.integer(rk::kNow)} >= config_.starting_time + config_.time_window;
}

double Execution::final_update(const RawState&) {
  terminal_ = terminal_update(executed_qty_);
  return terminal_;
}

void Execution::describe(const RawState& raw, gym::Info& info) const {
  info["time_ns"] = static_cast<double>(raw.integer(rk::kNow));
  info["entry_price"] = entry_price_;
  info["executed_qty"] = static_cast<double>(executed_qty_);
  info["pnl_cents"] = pnl_cents_;
  info["child_qty_sent"] = static_cast<double>(child_sent_);
  info["terminal_update"] = terminal_;
}

}  // namespace evsim::envs
