#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "evsim/kernel/agent.hpp"
#include "evsim/market/messages.hpp"

namespace evsim::gym {

using market::Price;
using market::Quantity;
using market::Side;

struct PlaceMarket {
  Side side{Side::Buy};
  Quantity qty{0};
};
struct PlaceLimit {
  Side side{Side::Buy};
  Quantity qty{0};
  Price price{0};
};
struct CancelAll {};
struct Noop {};

using OrderCommand = std::variant<Noop, PlaceMarket, PlaceLimit, CancelAll>;
/// The ActionBundle type the gym agent accepts.
using OrderCommands = std::vector<OrderCommand>;

/// RawState field names. This is the contract between the gym agent and the
/// environments (and anything binding to them).
namespace raw_keys {
inline constexpr std::string_view kNow = "now";                      // int, ns since midnight
inline constexpr std::string_view kWakeupIndex = "wakeup_index";     // int, 0 at the first wakeup
inline constexpr std::string_view kCash = "cash";                    // int, cents
inline constexpr std::string_view kHoldings = "holdings";            // int, signed shares
inline constexpr std::string_view kHasMarketData = "has_market_data";  // bool
inline constexpr std::string_view kBidPrices = "bid_prices";         // ints, best first
inline constexpr std::string_view kBidVolumes = "bid_volumes";
inline constexpr std::string_view kAskPrices = "ask_prices";
inline constexpr std::string_view kAskVolumes = "ask_volumes";
inline constexpr std::string_view kBidVolumeTotal = "bid_volume_total";  // int, all levels
inline constexpr std::string_view kAskVolumeTotal = "ask_volume_total";
inline constexpr std::string_view kLastTransaction = "last_transaction";  // int, absent before any trade
inline constexpr std::string_view kMidHistory = "mid_history";    // reals, oldest first, NaN = undefined
inline constexpr std::string_view kFillPrices = "fill_prices";    // ints, fills since the previous step
inline constexpr std::string_view kFillQtys = "fill_qtys";
inline constexpr std::string_view kFillSides = "fill_sides";      // +1 buy, -1 sell
inline constexpr std::string_view kOpenOrderIds = "open_order_ids";
inline constexpr std::string_view kOpenOrderSides = "open_order_sides";
inline constexpr std::string_view kOpenOrderPrices = "open_order_prices";
inline constexpr std::string_view kOpenOrderQtys = "open_order_qtys";
}  // namespace raw_keys

struct GymAgentConfig {
  AgentId exchange{0};
  SimTime first_wakeup{clock_time(9, 35)};
  Duration timestep{std::chrono::seconds(60)};
  /// Depth of the book subscription (whole-side totals come with every update).
  std::size_t book_levels{3};
  /// Mids kept in mid_history; at least k + 1 for R^k.
  std::size_t mid_history{8};
  std::int64_t initial_cash{0};
};

/// The experimental agent inside a market kernel. It subscribes to book
/// updates, keeps its own ledger of cash, holdings, open orders and fills, and
/// interrupts the kernel at every wakeup on a fixed time grid.
class MarketsGymAgent final : public InterruptingAgent {
 public:
  struct OpenOrder {
    Side side{Side::Buy};
    Price price{0};
    Quantity qty{0};
  };
  struct Fill {
    Price price{0};
    Quantity qty{0};
    Side side{Side::Buy};
  };

  explicit MarketsGymAgent(GymAgentConfig config);

  void kernel_starting(Kernel& kernel) override;
  void wakeup(Kernel& kernel) override;
  void receive_message(Kernel& kernel, const Message& message) override;

  /// Expects OrderCommands; anything else is a UsageError. Commands with a
  /// non-positive quantity or price are dropped without sending a message.
  void apply_action(Kernel& kernel, const ActionBundle& action) override;
  RawState raw_state(SimTime now) const override;

  std::int64_t cash() const { return cash_; }
  std::int64_t holdings() const { return holdings_; }
  const std::map<market::OrderId, OpenOrder>& open_orders() const { return open_; }
  std::size_t rejected_commands() const { return rejected_commands_; }

 private:
  void on_payload(const market::MarketPayload& payload);
  void cancel_all(Kernel& kernel);
  market::OrderId next_order_id() { return market::make_order_id(id(), next_local_seq_++); }

  GymAgentConfig config_;
  std::int64_t cash_;
  std::int64_t holdings_{0};
  std::int64_t wakeups_{0};
  std::uint32_t next_local_seq_{0};
  std::size_t rejected_commands_{0};

  std::optional<market::BookSnapshot> book_;
  std::deque<double> mids_;
  std::vector<Fill> fills_;
  /// Sent limit orders waiting for their acknowledgement.
  std::map<market::OrderId, OpenOrder> pending_limits_;
  std::map<market::OrderId, OpenOrder> open_;
};

/// Mid of a snapshot, or nullopt on a one-sided book.
std::optional<double> snapshot_mid(const market::BookSnapshot& book);

}  // namespace evsim::gym
