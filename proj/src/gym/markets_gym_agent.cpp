#include "evsim/gym/markets_gym_agent.hpp"

#include <cmath>
#include <limits>

#include "evsim/kernel/kernel.hpp"

namespace evsim::gym {

namespace rk = raw_keys;
using market::MarketPayload;

std::optional<double> snapshot_mid(const market::BookSnapshot& book) {
  if (book.bids.empty() || book.asks.empty()) return std::nullopt;
  return (static_cast<double>(book.bids.front().price) + static_cast<double>(book.asks.front().price)) / 2.0;
}

MarketsGymAgent::MarketsGymAgent(GymAgentConfig config)
    : InterruptingAgent("GYM_AGENT"), config_(config), cash_(config.initial_cash) {
  if (config_.timestep <= Duration::zero()) throw ConfigError("gym agent timestep must be positive");
  if (config_.book_levels == 0) throw ConfigError("gym agent book depth must be at least 1");
  if (config_.mid_history < 2) throw ConfigError("gym agent mid history must hold at least 2 mids");
}

void MarketsGymAgent::kernel_starting(Kernel& kernel) {
  kernel.send(id(), config_.exchange, market::make_body(market::Subscribe{config_.book_levels, Duration::zero()}));
  kernel.schedule_wakeup(id(), std::max(kernel.now(), config_.first_wakeup));
}

void MarketsGymAgent::wakeup(Kernel& kernel) {
  const auto mid = book_ ? snapshot_mid(*book_) : std::nullopt;
  mids_.push_back(mid.value_or(std::numeric_limits<double>::quiet_NaN()));
  if (mids_.size() > config_.mid_history) mids_.pop_front();

  kernel.schedule_wakeup(id(), kernel.now() + config_.timestep);
  kernel.interrupt(id(), raw_state(kernel.now()));
  fills_.clear();
  ++wakeups_;
}

void MarketsGymAgent::receive_message(Kernel&, const Message& message) {
  if (const MarketPayload* payload = market::market_payload(message)) on_payload(*payload);
}

void MarketsGymAgent::on_payload(const MarketPayload& payload) {
  if (const auto* update = std::get_if<market::MarketDataUpdate>(&payload)) {
    if (update->snapshot) book_ = *update->snapshot;
  } else if (const auto* fill = std::get_if<market::OrderExecuted>(&payload)) {
    const std::int64_t notional = fill->price * fill->qty;
    if (fill->side == Side::Buy) {
      holdings_ += fill->qty;
      cash_ -= notional;
    } else {
      holdings_ -= fill->qty;
      cash_ += notional;
    }
    fills_.push_back(Fill{fill->price, fill->qty, fill->side});
    // Aggressor fills happen before the order rests, so they never touch open_.
    if (!fill->aggressor) {
      auto it = open_.find(fill->id);
      if (it != open_.end() && (it->second.qty -= fill->qty) <= 0) open_.erase(it);
    }
  } else if (const auto* ack = std::get_if<market::OrderAccepted>(&payload)) {
    auto it = pending_limits_.find(ack->id);
    if (it == pending_limits_.end()) return;
    if (ack->resting_qty > 0) open_[ack->id] = OpenOrder{it->second.side, it->second.price, ack->resting_qty};
    pending_limits_.erase(it);
  } else if (const auto* cancelled = std::get_if<market::OrderCancelled>(&payload)) {
    open_.erase(cancelled->id);
  } else if (const auto* rejected = std::get_if<market::OrderRejected>(&payload)) {
    pending_limits_.erase(rejected->id);
    log("REJECTED " + std::to_string(rejected->id) + " " + std::string(market::to_string(rejected->reason)));
  }
}

void MarketsGymAgent::cancel_all(Kernel& kernel) {
  for (const auto& [order_id, order] : open_)
    kernel.send(id(), config_.exchange, market::make_body(market::CancelRequest{order_id}));
  for (const auto& [order_id, order] : pending_limits_)
    kernel.send(id(), config_.exchange, market::make_body(market::CancelRequest{order_id}));
}

void MarketsGymAgent::apply_action(Kernel& kernel, const ActionBundle& action) {
  const auto* commands = std::any_cast<OrderCommands>(&action);
  if (commands == nullptr) throw UsageError("gym agent action must be a list of order commands");

  for (const auto& command : *commands) {
    if (std::holds_alternative<CancelAll>(command)) {
      cancel_all(kernel);
    } else if (const auto* m = std::get_if<PlaceMarket>(&command)) {
      if (m->qty <= 0) {
        ++rejected_commands_;
        continue;
      }
      kernel.send(id(), config_.exchange,
                  market::make_body(market::MarketOrderRequest{next_order_id(), m->side, m->qty}));
    } else if (const auto* l = std::get_if<PlaceLimit>(&command)) {
      if (l->qty <= 0 || l->price <= 0) {
        ++rejected_commands_;
        continue;
      }
      const auto order_id = next_order_id();
      pending_limits_[order_id] = OpenOrder{l->side, l->price, l->qty};
      kernel.send(id(), config_.exchange,
                  market::make_body(market::LimitOrderRequest{order_id, l->side, l->qty, l->price}));
    }
  }
}

RawState MarketsGymAgent::raw_state(SimTime now) const {
  RawState raw;
  raw.set(std::string(rk::kNow), now.nanos);
  raw.set(std::string(rk::kWakeupIndex), wakeups_);
  raw.set(std::string(rk::kCash), cash_);
  raw.set(std::string(rk::kHoldings), holdings_);
  raw.set(std::string(rk::kHasMarketData), book_.has_value());

  std::vector<std::int64_t> bid_px, bid_vol, ask_px, ask_vol;
  std::int64_t bid_total = 0, ask_total = 0;
  if (book_) {
    for (const auto& l : book_->bids) {
      bid_px.push_back(l.price);
      bid_vol.push_back(l.volume);
    }
    for (const auto& l : book_->asks) {
      ask_px.push_back(l.price);
      ask_vol.push_back(l.volume);
    }
    bid_total = book_->bid_volume_total;
    ask_total = book_->ask_volume_total;
    if (book_->last_transaction) raw.set(std::string(rk::kLastTransaction), *book_->last_transaction);
  }
  raw.set(std::string(rk::kBidPrices), std::move(bid_px));
  raw.set(std::string(rk::kBidVolumes), std::move(bid_vol));
  raw.set(std::string(rk::kAskPrices), std::move(ask_px));
  raw.set(std::string(rk::kAskVolumes), std::move(ask_vol));
  raw.set(std::string(rk::kBidVolumeTotal), bid_total);
  raw.set(std::string(rk::kAskVolumeTotal), ask_total);
  raw.set(std::string(rk::kMidHistory), std::vector<double>(mids_.begin(), mids_.end()));

  std::vector<std::int64_t> fill_px, fill_qty, fill_side;
  for (const auto& f : fills_) {
    fill_px.push_back(f.price);
    fill_qty.push_back(f.qty);
    fill_side.push_back(market::sign(f.side));
  }
  raw.set(std::string(rk::kFillPrices), std::move(fill_px));
  raw.set(std::string(rk::kFillQtys), std::move(fill_qty));
  raw.set(std::string(rk::kFillSides), std::move(fill_side));

  std::vector<std::int64_t> ids, sides, prices, qtys;
  for (const auto& [order_id, order] : open_) {
    ids.push_back(static_cast<std::int64_t>(order_id));
    sides.push_back(market::sign(order.side));
    prices.push_back(order.price);
    qtys.push_back(order.qty);
  }
  raw.set(std::string(rk::kOpenOrderIds), std::move(ids));
  raw.set(std::string(rk::kOpenOrderSides), std::move(sides));
  raw.set(std::string(rk::kOpenOrderPrices), std::move(prices));
  raw.set(std::string(rk::kOpenOrderQtys), std::move(qtys));
  return raw;
}

}  // namespace evsim::gym
