#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "evsim/kernel/ids.hpp"
#include "evsim/kernel/sim_time.hpp"

namespace evsim::market {

/// Integer cents.
using Price = std::int64_t;
/// Shares.
using Quantity = std::int64_t;
using OrderId = std::uint64_t;

enum class Side : std::uint8_t { Buy, Sell };

constexpr Side opposite(Side s) { return s == Side::Buy ? Side::Sell : Side::Buy; }
/// +1 for buy, -1 for sell.
constexpr int sign(Side s) { return s == Side::Buy ? 1 : -1; }
constexpr std::string_view to_string(Side s) { return s == Side::Buy ? "BUY" : "SELL"; }

/// Depth argument meaning "every level".
inline constexpr std::size_t kAllLevels = std::numeric_limits<std::size_t>::max();

/// Order ids are client-assigned: owner in the high 32 bits, a per-owner counter below.
constexpr OrderId make_order_id(AgentId owner, std::uint32_t local_seq) {
  return (static_cast<OrderId>(owner.value) << 32) | local_seq;
}

struct Order {
  OrderId id{0};
  AgentId owner;
  Side side{Side::Buy};
  Quantity qty_open{0};
  /// Absent for market orders; always present on resting orders.
  std::optional<Price> limit_price;
  SimTime entered_at;
  std::uint64_t entry_seq{0};
};

struct Trade {
  Price price{0};
  Quantity qty{0};
  AgentId aggressor;
  AgentId resting_owner;
  OrderId aggressor_order{0};
  OrderId resting_order{0};
  Side aggressor_side{Side::Buy};
  SimTime at;

  friend bool operator==(const Trade&, const Trade&) = default;
};

struct LevelView {
  Price price{0};
  Quantity volume{0};

  friend bool operator==(const LevelView&, const LevelView&) = default;
};

struct BookSnapshot {
  /// Best first: bids descending, asks ascending.
  std::vector<LevelView> bids;
  std::vector<LevelView> asks;
  std::optional<Price> last_transaction;
  /// Whole-side resting volume, independent of the snapshot depth.
  Quantity bid_volume_total{0};
  Quantity ask_volume_total{0};

  friend bool operator==(const BookSnapshot&, const BookSnapshot&) = default;
};

struct BookStats {
  std::optional<Price> best_bid;
  std::optional<Price> best_ask;
  std::optional<double> mid;
  std::optional<Price> spread;
  std::optional<Price> last_transaction;

  friend bool operator==(const BookStats&, const BookStats&) = default;
};

enum class RejectReason : std::uint8_t {
  NonPositiveQuantity,
  NonPositivePrice,
  DuplicateOrderId,
  MarketClosed,
};

std::string_view to_string(RejectReason r);

}  // namespace evsim::market
