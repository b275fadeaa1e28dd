#pragma once

#include <optional>
#include <vector>

#include "evsim/kernel/agent.hpp"
#include "evsim/market/messages.hpp"
#include "evsim/market/order_book.hpp"

namespace evsim::market {

/// Regular continuous session, [open_at, close_at).
struct MarketHours {
  SimTime open_at{clock_time(9, 30)};
  SimTime close_at{clock_time(16, 0)};

  constexpr bool is_open(SimTime t) const { return open_at <= t && t < close_at; }
};

/// Resting liquidity the exchange places itself at the open, so the first
/// observation after the open sees a two-sided book. Seed orders are owned
/// by the exchange agent.
struct BookSeed {
  bool enabled{true};
  Price center{10'000};
  /// Best bid = center - half_spread, best ask = center + half_spread.
  Price half_spread{1};
  Price tick{4};
  int levels{500};
  Quantity qty_per_level{100};
};

struct ExchangeConfig {
  MarketHours hours;
  BookSeed seed;
};

struct Outbound {
  AgentId recipient;
  MarketPayload payload;
};

/// Trade tape row as written to the run log.
struct TapeRow {
  std::int64_t time_nanos{0};
  Price price{0};
  Quantity qty{0};
  std::uint32_t aggressor_id{0};
  std::uint32_t resting_id{0};

  friend bool operator==(const TapeRow&, const TapeRow&) = default;
};

class ExchangeAgent : public Agent {
 public:
  explicit ExchangeAgent(ExchangeConfig config);

  /// Applies one order-entry message. Inside market hours: one acknowledgement
  /// to the sender plus a fill to each counterparty of every trade. Outside
  /// market hours or on a malformed order: a single reject.
  std::vector<Outbound> handle_trading_message(AgentId sender, const MarketPayload& msg, SimTime now);
  /// Snapshot/stats queries produce one reply; (un)subscribe produces none.
  std::vector<Outbound> handle_data_request(AgentId sender, const MarketPayload& msg, SimTime now);
  /// Pushes to subscribers whose interval elapsed, if the book changed since the last call.
  std::vector<Outbound> publish_subscriptions(SimTime now);
  void seed_book(SimTime now);

  const OrderBook& book() const { return book_; }
  const std::vector<Trade>& trade_tape() const { return tape_; }
  const ExchangeConfig& config() const { return config_; }
  std::size_t subscription_count() const { return subscriptions_.size(); }

  void kernel_starting(Kernel& kernel) override;
  void wakeup(Kernel& kernel) override;
  void receive_message(Kernel& kernel, const Message& message) override;
  void kernel_terminating(Kernel& kernel) override;

 private:
  struct Subscription {
    AgentId subscriber;
    std::size_t levels;
    Duration min_interval;
    std::optional<SimTime> last_push;
  };

  void emit(Kernel& kernel, std::vector<Outbound>& out);
  void record_fills(const std::vector<Trade>& trades, std::vector<Outbound>& out);

  ExchangeConfig config_;
  OrderBook book_;
  std::vector<Trade> tape_;
  std::vector<Subscription> subscriptions_;
  bool book_changed_{false};
  bool seeded_{false};
  std::uint32_t seed_seq_{0};
};

std::string format_tape_row(const TapeRow& row);
TapeRow to_tape_row(const Trade& trade);

}  // namespace evsim::market
