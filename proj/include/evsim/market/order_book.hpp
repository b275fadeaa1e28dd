#pragma once

#include <functional>
#include <list>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "evsim/market/types.hpp"

namespace evsim::market {

/// Price/time-priority limit order book for a single symbol.
///
/// Trades print at the resting order's price. Marketable limit orders trade
/// and rest the remainder; market orders discard any unfilled remainder.
/// Self-trades are allowed.
class OrderBook {
 public:
  /// Reason the order would be rejected, or nullopt if acceptable.
  std::optional<RejectReason> validate_limit(const Order& order) const;
  std::optional<RejectReason> validate_market(Quantity qty) const;

  /// Throws std::invalid_argument when validate_limit fails; the book is then unchanged.
  std::vector<Trade> submit_limit(Order order);
  std::vector<Trade> submit_market(OrderId id, AgentId owner, Side side, Quantity qty, SimTime now);
  /// Open quantity removed; 0 for unknown or already-filled ids.
  Quantity cancel(OrderId id);

  BookSnapshot snapshot(std::size_t levels = kAllLevels) const;
  BookStats stats() const;

  std::optional<Price> best_bid() const;
  std::optional<Price> best_ask() const;
  std::optional<Price> last_transaction() const { return last_transaction_; }
  /// Resting volume summed over every level of one side.
  Quantity total_volume(Side side) const { return side == Side::Buy ? bid_total_ : ask_total_; }

  bool contains(OrderId id) const { return index_.contains(id); }
  std::optional<Quantity> open_qty(OrderId id) const;
  std::size_t resting_count() const { return index_.size(); }
  std::size_t resting_count(AgentId owner) const;
  /// Resting orders of one side in priority order.
  std::vector<Order> resting_orders(Side side) const;

 private:
  struct Level {
    std::list<Order> queue;
    Quantity volume{0};
  };
  using BidLadder = std::map<Price, Level, std::greater<>>;
  using AskLadder = std::map<Price, Level, std::less<>>;

  struct Locator {
    Side side;
    Price price;
    std::list<Order>::iterator it;
  };

  template <class Ladder>
  void match(Ladder& opposite, Order& incoming, std::vector<Trade>& trades);
  template <class Ladder>
  void rest(Ladder& ladder, Order order);
  Quantity& side_total(Side side) { return side == Side::Buy ? bid_total_ : ask_total_; }
  template <class Ladder>
  static void collect(const Ladder& ladder, std::size_t levels, std::vector<LevelView>& out);

  BidLadder bids_;
  AskLadder asks_;
  std::unordered_map<OrderId, Locator> index_;
  std::optional<Price> last_transaction_;
  Quantity bid_total_{0};
  Quantity ask_total_{0};
  std::uint64_t next_entry_seq_{0};
};

}  // namespace evsim::market
