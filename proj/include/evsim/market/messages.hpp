#pragma once

#include <memory>
#include <variant>

#include "evsim/kernel/message.hpp"
#include "evsim/market/types.hpp"

namespace evsim::market {

// Order entry (participant -> exchange). Ids are client-assigned.
struct LimitOrderRequest {
  OrderId id{0};
  Side side{Side::Buy};
  Quantity qty{0};
  Price price{0};
};
struct MarketOrderRequest {
  OrderId id{0};
  Side side{Side::Buy};
  Quantity qty{0};
};
struct CancelRequest {
  OrderId id{0};
};

// Order entry replies (exchange -> participant).
struct OrderAccepted {
  OrderId id{0};
  /// Quantity left resting after immediate matching; 0 for market orders.
  Quantity resting_qty{0};
};
struct OrderCancelled {
  OrderId id{0};
  Quantity cancelled_qty{0};
};
struct OrderRejected {
  OrderId id{0};
  RejectReason reason{RejectReason::MarketClosed};
};
struct OrderExecuted {
  OrderId id{0};
  Side side{Side::Buy};
  Price price{0};
  Quantity qty{0};
  bool aggressor{false};
  AgentId counterparty;
};

// Market data.
struct SnapshotQuery {
  std::size_t levels{kAllLevels};
};
struct StatsQuery {};
struct Subscribe {
  std::size_t levels{kAllLevels};
  Duration min_interval{0};
};
struct Unsubscribe {
  std::size_t levels{kAllLevels};
};
struct SnapshotReply {
  SimTime at;
  BookSnapshot snapshot;
};
struct StatsReply {
  SimTime at;
  BookStats stats;
};
struct MarketDataUpdate {
  SimTime at;
  std::size_t levels{kAllLevels};
  std::shared_ptr<const BookSnapshot> snapshot;
};

using MarketPayload =
    std::variant<LimitOrderRequest, MarketOrderRequest, CancelRequest, OrderAccepted, OrderCancelled, OrderRejected,
                 OrderExecuted, SnapshotQuery, StatsQuery, Subscribe, Unsubscribe, SnapshotReply, StatsReply,
                 MarketDataUpdate>;

struct MarketMessage final : MessageBody {
  explicit MarketMessage(MarketPayload p) : payload(std::move(p)) {}
  MarketPayload payload;
};

inline std::shared_ptr<const MessageBody> make_body(MarketPayload payload) {
  return std::make_shared<const MarketMessage>(std::move(payload));
}

inline const MarketPayload* market_payload(const Message& m) {
  const auto* body = m.body_as<MarketMessage>();
  return body == nullptr ? nullptr : &body->payload;
}

constexpr bool is_trading_message(const MarketPayload& p) {
  return std::holds_alternative<LimitOrderRequest>(p) || std::holds_alternative<MarketOrderRequest>(p) ||
         std::holds_alternative<CancelRequest>(p);
}

constexpr bool is_data_request(const MarketPayload& p) {
  return std::holds_alternative<SnapshotQuery>(p) || std::holds_alternative<StatsQuery>(p) ||
         std::holds_alternative<Subscribe>(p) || std::holds_alternative<Unsubscribe>(p);
}

}  // namespace evsim::market
