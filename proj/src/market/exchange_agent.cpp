#include "evsim/market/exchange_agent.hpp"

#include <algorithm>
#include <map>

#include "evsim/kernel/kernel.hpp"

namespace evsim::market {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr OrderId order_id_of(const MarketPayload& msg) {
  if (const auto* l = std::get_if<LimitOrderRequest>(&msg)) return l->id;
  if (const auto* m = std::get_if<MarketOrderRequest>(&msg)) return m->id;
  if (const auto* c = std::get_if<CancelRequest>(&msg)) return c->id;
  return 0;
}

}  // namespace

ExchangeAgent::ExchangeAgent(ExchangeConfig config) : Agent("EXCHANGE"), config_(config) {
  if (!(config_.hours.open_at < config_.hours.close_at)) throw ConfigError("market open must precede close");
  if (config_.seed.enabled) {
    if (config_.seed.levels < 0 || config_.seed.qty_per_level <= 0 || config_.seed.tick <= 0 ||
        config_.seed.half_spread <= 0)
      throw ConfigError("book seed parameters must be positive");
    if (config_.seed.center - config_.seed.half_spread - config_.seed.tick * (config_.seed.levels - 1) <= 0)
      throw ConfigError("book seed would place non-positive bid prices");
  }
}

void ExchangeAgent::record_fills(const std::vector<Trade>& trades, std::vector<Outbound>& out) {
  for (const Trade& t : trades) {
    tape_.push_back(t);
    out.push_back({t.aggressor, OrderExecuted{t.aggressor_order, t.aggressor_side, t.price, t.qty, true,
                                              t.resting_owner}});
    out.push_back({t.resting_owner, OrderExecuted{t.resting_order, opposite(t.aggressor_side), t.price, t.qty, false,
                                                  t.aggressor}});
  }
}

std::vector<Outbound> ExchangeAgent::handle_trading_message(AgentId sender, const MarketPayload& msg, SimTime now) {
  std::vector<Outbound> out;
  if (!config_.hours.is_open(now)) {
    out.push_back({sender, OrderRejected{order_id_of(msg), RejectReason::MarketClosed}});
    return out;
  }

  std::visit(overloaded{
                 [&](const LimitOrderRequest& req) {
                   Order order{req.id, sender, req.side, req.qty, req.price, now, 0};
                   if (auto reason = book_.validate_limit(order)) {
                     out.push_back({sender, OrderRejected{req.id, *reason}});
                     return;
                   }
                   auto trades = book_.submit_limit(order);
                   out.push_back({sender, OrderAccepted{req.id, book_.open_qty(req.id).value_or(0)}});
                   record_fills(trades, out);
                   book_changed_ = true;
                 },
                 [&](const MarketOrderRequest& req) {
                   if (auto reason = book_.validate_market(req.qty)) {
                     out.push_back({sender, OrderRejected{req.id, *reason}});
                     return;
                   }
                   auto trades = book_.submit_market(req.id, sender, req.side, req.qty, now);
                   out.push_back({sender, OrderAccepted{req.id, 0}});
                   record_fills(trades, out);
                   if (!trades.empty()) book_changed_ = true;
                 },
                 [&](const CancelRequest& req) {
                   const Quantity qty = book_.cancel(req.id);
                   out.push_back({sender, OrderCancelled{req.id, qty}});
                   if (qty > 0) book_changed_ = true;
                 },
                 [](const auto&) {},
             },
             msg);
  return out;
}

std::vector<Outbound> ExchangeAgent::handle_data_request(AgentId sender, const MarketPayload& msg, SimTime now) {
  std::vector<Outbound> out;
  std::visit(overloaded{
                 [&](const SnapshotQuery& q) { out.push_back({sender, SnapshotReply{now, book_.snapshot(q.levels)}}); },
                 [&](const StatsQuery&) { out.push_back({sender, StatsReply{now, book_.stats()}}); },
                 [&](const Subscribe& s) {
                   auto it = std::find_if(subscriptions_.begin(), subscriptions_.end(), [&](const Subscription& x) {
                     return x.subscriber == sender && x.levels == s.levels;
                   });
                   if (it != subscriptions_.end())
                     it->min_interval = s.min_interval;
                   else
                     subscriptions_.push_back({sender, s.levels, s.min_interval, std::nullopt});
                 },
                 [&](const Unsubscribe& u) {
                   std::erase_if(subscriptions_, [&](const Subscription& x) {
                     return x.subscriber == sender && x.levels == u.levels;
                   });
                 },
                 [](const auto&) {},
             },
             msg);
  return out;
}

std::vector<Outbound> ExchangeAgent::publish_subscriptions(SimTime now) {
  std::vector<Outbound> out;
  if (!book_changed_) return out;
  book_changed_ = false;

  std::map<std::size_t, std::shared_ptr<const BookSnapshot>> by_depth;
  for (Subscription& sub : subscriptions_) {
    if (sub.last_push && now - *sub.last_push < sub.min_interval) continue;
    auto& snap = by_depth[sub.levels];
    if (!snap) snap = std::make_shared<const BookSnapshot>(book_.snapshot(sub.levels));
    out.push_back({sub.subscriber, MarketDataUpdate{now, sub.levels, snap}});
    sub.last_push = now;
  }
  return out;
}

void ExchangeAgent::seed_book(SimTime now) {
  const BookSeed& s = config_.seed;
  for (int i = 0; i < s.levels; ++i) {
    const Price offset = s.half_spread + s.tick * i;
    book_.submit_limit(
        Order{make_order_id(id(), seed_seq_++), id(), Side::Buy, s.qty_per_level, s.center - offset, now, 0});
    book_.submit_limit(
        Order{make_order_id(id(), seed_seq_++), id(), Side::Sell, s.qty_per_level, s.center + offset, now, 0});
  }
  seeded_ = true;
  book_changed_ = true;
}

void ExchangeAgent::emit(Kernel& kernel, std::vector<Outbound>& out) {
  for (auto& o : out) kernel.send(id(), o.recipient, make_body(std::move(o.payload)));
}

void ExchangeAgent::kernel_starting(Kernel& kernel) {
  if (config_.seed.enabled && kernel.now() <= config_.hours.open_at)
    kernel.schedule_wakeup(id(), config_.hours.open_at);
}

void ExchangeAgent::wakeup(Kernel& kernel) {
  if (config_.seed.enabled && !seeded_ && config_.hours.is_open(kernel.now())) {
    seed_book(kernel.now());
    auto out = publish_subscriptions(kernel.now());
    emit(kernel, out);
  }
}

void ExchangeAgent::receive_message(Kernel& kernel, const Message& message) {
  const MarketPayload* payload = market_payload(message);
  if (payload == nullptr) return;
  std::vector<Outbound> out;
  if (is_trading_message(*payload)) {
    out = handle_trading_message(message.sender, *payload, kernel.now());
    auto pushes = publish_subscriptions(kernel.now());
    out.insert(out.end(), std::make_move_iterator(pushes.begin()), std::make_move_iterator(pushes.end()));
  } else if (is_data_request(*payload)) {
    out = handle_data_request(message.sender, *payload, kernel.now());
  }
  emit(kernel, out);
}

void ExchangeAgent::kernel_terminating(Kernel&) {
  for (const Trade& t : tape_) log("TRADE " + format_tape_row(to_tape_row(t)));
}

TapeRow to_tape_row(const Trade& t) {
  return TapeRow{t.at.nanos, t.price, t.qty, t.aggressor.value, t.resting_owner.value};
}

std::string format_tape_row(const TapeRow& r) {
  return std::to_string(r.time_nanos) + ',' + std::to_string(r.price) + ',' + std::to_string(r.qty) + ',' +
         std::to_string(r.aggressor_id) + ',' + std::to_string(r.resting_id);
}

}  // namespace evsim::market
