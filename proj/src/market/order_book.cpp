#include "evsim/market/order_book.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace evsim::market {

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::NonPositiveQuantity: return "NON_POSITIVE_QUANTITY";
    case RejectReason::NonPositivePrice: return "NON_POSITIVE_PRICE";
    case RejectReason::DuplicateOrderId: return "DUPLICATE_ORDER_ID";
    case RejectReason::MarketClosed: return "MARKET_CLOSED";
  }
  return "UNKNOWN";
}

std::optional<RejectReason> OrderBook::validate_limit(const Order& order) const {
  if (order.qty_open <= 0) return RejectReason::NonPositiveQuantity;
  if (!order.limit_price || *order.limit_price <= 0) return RejectReason::NonPositivePrice;
  if (index_.contains(order.id)) return RejectReason::DuplicateOrderId;
  return std::nullopt;
}

std::optional<RejectReason> OrderBook::validate_market(Quantity qty) const {
  if (qty <= 0) return RejectReason::NonPositiveQuantity;
  return std::nullopt;
}

template <class Ladder>
void OrderBook::match(Ladder& opposite, Order& incoming, std::vector<Trade>& trades) {
  const auto crosses = [&](Price resting) {
    if (!incoming.limit_price) return true;
    return incoming.side == Side::Buy ? resting <= *incoming.limit_price : resting >= *incoming.limit_price;
  };

  while (incoming.qty_open > 0 && !opposite.empty()) {
    auto level_it = opposite.begin();
    if (!crosses(level_it->first)) break;
    Level& level = level_it->second;

    while (incoming.qty_open > 0 && !level.queue.empty()) {
      Order& resting = level.queue.front();
      const Quantity qty = std::min(incoming.qty_open, resting.qty_open);
      trades.push_back(Trade{level_it->first, qty, incoming.owner, resting.owner, incoming.id, resting.id,
                             incoming.side, incoming.entered_at});
      incoming.qty_open -= qty;
      resting.qty_open -= qty;
      level.volume -= qty;
      side_total(incoming.side == Side::Buy ? Side::Sell : Side::Buy) -= qty;
      last_transaction_ = level_it->first;
      if (resting.qty_open == 0) {
        index_.erase(resting.id);
        level.queue.pop_front();
      }
    }
    if (level.queue.empty()) opposite.erase(level_it);
  }
}

template <class Ladder>
void OrderBook::rest(Ladder& ladder, Order order) {
  const Price price = *order.limit_price;
  Level& level = ladder[price];
  level.volume += order.qty_open;
  side_total(order.side) += order.qty_open;
  level.queue.push_back(std::move(order));
  auto it = std::prev(level.queue.end());
  index_.emplace(it->id, Locator{it->side, price, it});
}

std::vector<Trade> OrderBook::submit_limit(Order order) {
  if (auto reason = validate_limit(order))
    throw std::invalid_argument("limit order rejected: " + std::string(to_string(*reason)));
  order.entry_seq = next_entry_seq_++;

  std::vector<Trade> trades;
  if (order.side == Side::Buy) {
    match(asks_, order, trades);
    if (order.qty_open > 0) rest(bids_, std::move(order));
  } else {
    match(bids_, order, trades);
    if (order.qty_open > 0) rest(asks_, std::move(order));
  }
  return trades;
}

std::vector<Trade> OrderBook::submit_market(OrderId id, AgentId owner, Side side, Quantity qty, SimTime now) {
  if (auto reason = validate_market(qty))
    throw std::invalid_argument("market order rejected: " + std::string(to_string(*reason)));
  Order order{id, owner, side, qty, std::nullopt, now, next_entry_seq_++};
  std::vector<Trade> trades;
  if (side == Side::Buy)
    match(asks_, order, trades);
  else
    match(bids_, order, trades);
  return trades;
}

Quantity OrderBook::cancel(OrderId id) {
  auto found = index_.find(id);
  if (found == index_.end()) return 0;
  const Locator loc = found->second;
  const Quantity qty = loc.it->qty_open;
  index_.erase(found);
  side_total(loc.side) -= qty;

  auto drop = [&](auto& ladder) {
    auto level_it = ladder.find(loc.price);
    level_it->second.volume -= qty;
    level_it->second.queue.erase(loc.it);
    if (level_it->second.queue.empty()) ladder.erase(level_it);
  };
  if (loc.side == Side::Buy)
    drop(bids_);
  else
    drop(asks_);
  return qty;
}

template <class Ladder>
void OrderBook::collect(const Ladder& ladder, std::size_t levels, std::vector<LevelView>& out) {
  out.reserve(std::min(levels, ladder.size()));
  for (const auto& [price, level] : ladder) {
    if (out.size() >= levels) break;
    out.push_back(LevelView{price, level.volume});
  }
}

BookSnapshot OrderBook::snapshot(std::size_t levels) const {
  BookSnapshot snap;
  collect(bids_, levels, snap.bids);
  collect(asks_, levels, snap.asks);
  snap.last_transaction = last_transaction_;
  snap.bid_volume_total = bid_total_;
  snap.ask_volume_total = ask_total_;
  return snap;
}

std::optional<Price> OrderBook::best_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Price> OrderBook::best_ask() const {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

BookStats OrderBook::stats() const {
  BookStats s;
  s.best_bid = best_bid();
  s.best_ask = best_ask();
  if (s.best_bid && s.best_ask) {
    s.mid = (static_cast<double>(*s.best_bid) + static_cast<double>(*s.best_ask)) / 2.0;
    s.spread = *s.best_ask - *s.best_bid;
  }
  s.last_transaction = last_transaction_;
  return s;
}

std::optional<Quantity> OrderBook::open_qty(OrderId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second.it->qty_open;
}

std::size_t OrderBook::resting_count(AgentId owner) const {
  return static_cast<std::size_t>(
      std::count_if(index_.begin(), index_.end(), [&](const auto& kv) { return kv.second.it->owner == owner; }));
}

std::vector<Order> OrderBook::resting_orders(Side side) const {
  std::vector<Order> out;
  auto gather = [&](const auto& ladder) {
    for (const auto& [price, level] : ladder)
      for (const auto& o : level.queue) out.push_back(o);
  };
  if (side == Side::Buy)
    gather(bids_);
  else
    gather(asks_);
  return out;
}

}  // namespace evsim::market
