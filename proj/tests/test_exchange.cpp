#include <gtest/gtest.h>

#include "evsim/market/exchange_agent.hpp"
#include "evsim/market/population.hpp"
#include "evsim/market/trade_tape.hpp"

using namespace evsim;
using namespace evsim::market;

namespace {

const AgentId kBuyer{1}, kSeller{2};
const SimTime kOpen = clock_time(10, 0);

ExchangeAgent unseeded() {
  ExchangeConfig c;
  c.seed.enabled = false;
  return ExchangeAgent(c);
}

template <class T>
std::vector<T> of_type(const std::vector<Outbound>& out) {
  std::vector<T> v;
  for (const auto& o : out)
    if (const auto* p = std::get_if<T>(&o.payload)) v.push_back(*p);
  return v;
}

}  // namespace

TEST(Exchange, MarketOrderFillsBothCounterparties) {
  auto ex = unseeded();
  ex.handle_trading_message(kSeller, LimitOrderRequest{10, Side::Sell, 100, 101}, kOpen);
  const auto out = ex.handle_trading_message(kBuyer, MarketOrderRequest{20, Side::Buy, 100}, kOpen);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].recipient, kBuyer);
  EXPECT_TRUE(std::holds_alternative<OrderAccepted>(out[0].payload));
  const auto f = of_type<OrderExecuted>(out);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(out[1].recipient, kBuyer);
  EXPECT_EQ(out[2].recipient, kSeller);
  for (const auto& e : f) {
    EXPECT_EQ(e.qty, 100);
    EXPECT_EQ(e.price, 101);
  }
  EXPECT_TRUE(f[0].aggressor);
  EXPECT_EQ(f[1].side, Side::Sell);
  EXPECT_EQ(ex.trade_tape().size(), 1u);
}

TEST(Exchange, ClosedMarketRejectsAndLeavesBook) {
  auto ex = unseeded();
  const auto out = ex.handle_trading_message(kBuyer, LimitOrderRequest{1, Side::Buy, 10, 99}, clock_time(9, 20));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(std::get<OrderRejected>(out[0].payload).reason, RejectReason::MarketClosed);
  EXPECT_EQ(ex.book().resting_count(), 0u);
  EXPECT_EQ(of_type<OrderRejected>(ex.handle_trading_message(kBuyer, CancelRequest{1}, clock_time(16, 0))).size(), 1u);
}

TEST(Exchange, MalformedOrderIsRejected) {
  auto ex = unseeded();
  const auto out = ex.handle_trading_message(kBuyer, LimitOrderRequest{1, Side::Buy, 0, 99}, kOpen);
  EXPECT_EQ(std::get<OrderRejected>(out.at(0).payload).reason, RejectReason::NonPositiveQuantity);
  EXPECT_EQ(ex.book().resting_count(), 0u);
}

TEST(Exchange, CancelUnknownIsAcknowledgedWithZero) {
  auto ex = unseeded();
  const auto out = ex.handle_trading_message(kBuyer, CancelRequest{99}, kOpen);
  EXPECT_EQ(std::get<OrderCancelled>(out.at(0).payload).cancelled_qty, 0);
}

TEST(Exchange, AcknowledgementReportsRestingQuantity) {
  auto ex = unseeded();
  ex.handle_trading_message(kSeller, LimitOrderRequest{1, Side::Sell, 30, 101}, kOpen);
  const auto out = ex.handle_trading_message(kBuyer, LimitOrderRequest{2, Side::Buy, 100, 101}, kOpen);
  EXPECT_EQ(std::get<OrderAccepted>(out.at(0).payload).resting_qty, 70);
}

TEST(Exchange, DataRequests) {
  auto ex = unseeded();
  for (int i = 0; i < 5; ++i)
    ex.handle_trading_message(kSeller, LimitOrderRequest{static_cast<OrderId>(i + 1), Side::Sell, 10, 101 + i}, kOpen);
  auto snap = ex.handle_data_request(kBuyer, SnapshotQuery{3}, kOpen);
  EXPECT_EQ(std::get<SnapshotReply>(snap.at(0).payload).snapshot.asks.size(), 3u);
  EXPECT_EQ(snap.at(0).payload.index(), ex.handle_data_request(kBuyer, SnapshotQuery{3}, kOpen).at(0).payload.index());
  EXPECT_EQ(std::get<SnapshotReply>(ex.handle_data_request(kBuyer, SnapshotQuery{3}, kOpen).at(0).payload).snapshot,
            std::get<SnapshotReply>(snap.at(0).payload).snapshot);

  auto empty = unseeded();
  const auto stats = std::get<StatsReply>(empty.handle_data_request(kBuyer, StatsQuery{}, kOpen).at(0).payload).stats;
  EXPECT_FALSE(stats.mid.has_value());
  EXPECT_FALSE(stats.spread.has_value());
  EXPECT_TRUE(empty.handle_data_request(kBuyer, Subscribe{3, Duration{0}}, kOpen).empty());
}

TEST(Exchange, SubscriptionsPushPerChange) {
  auto ex = unseeded();
  EXPECT_TRUE(ex.publish_subscriptions(kOpen).empty());
  ex.handle_trading_message(kSeller, LimitOrderRequest{1, Side::Sell, 10, 101}, kOpen);
  EXPECT_TRUE(ex.publish_subscriptions(kOpen).empty());  // no subscribers

  ex.handle_data_request(kBuyer, Subscribe{3, Duration{0}}, kOpen);
  for (int i = 0; i < 3; ++i) {
    ex.handle_trading_message(kSeller, LimitOrderRequest{static_cast<OrderId>(10 + i), Side::Sell, 10, 105}, kOpen);
    EXPECT_EQ(ex.publish_subscriptions(kOpen).size(), 1u);
  }
  EXPECT_TRUE(ex.publish_subscriptions(kOpen).empty());  // nothing changed
}

TEST(Exchange, SubscriptionIntervalThrottles) {
  auto ex = unseeded();
  ex.handle_data_request(kBuyer, Subscribe{kAllLevels, std::chrono::seconds(1)}, kOpen);
  int pushes = 0;
  ex.handle_trading_message(kSeller, LimitOrderRequest{1, Side::Sell, 10, 101}, kOpen);
  pushes += static_cast<int>(ex.publish_subscriptions(kOpen).size());
  ex.handle_trading_message(kSeller, LimitOrderRequest{2, Side::Sell, 10, 102}, kOpen + Duration{1});
  pushes += static_cast<int>(ex.publish_subscriptions(kOpen + Duration{1}).size());
  EXPECT_EQ(pushes, 1);
  ex.handle_trading_message(kSeller, LimitOrderRequest{3, Side::Sell, 10, 103}, kOpen + std::chrono::seconds(1));
  EXPECT_EQ(ex.publish_subscriptions(kOpen + std::chrono::seconds(1)).size(), 1u);
}

TEST(Exchange, SeededBookIsTwoSided) {
  ExchangeConfig c;
  c.seed.levels = 3;
  ExchangeAgent ex(c);
  ex.attach(AgentId{0}, 0);
  ex.seed_book(kOpen);
  EXPECT_EQ(ex.book().best_bid(), 9999);
  EXPECT_EQ(ex.book().best_ask(), 10001);
  EXPECT_EQ(ex.book().snapshot().bids.back().price, 9999 - 8);
  EXPECT_EQ(ex.book().total_volume(Side::Sell), 300);
}

TEST(Exchange, SeedMustKeepPricesPositive) {
  ExchangeConfig c;
  c.seed.center = 100;
  c.seed.levels = 500;
  EXPECT_THROW(ExchangeAgent{c}, ConfigError);
}

TEST(MarketDay, TapeIsInRunLogAndEmptyWithoutEvents) {
  MarketSetup setup;
  setup.population.noise_count = 5;
  setup.population.value_count = 2;
  setup.population.momentum_count = 1;
  setup.end_time = clock_time(10, 0);
  {
    Kernel k(make_market_kernel_config(setup, 1));
    EXPECT_TRUE(trade_tape(k.terminate()).empty());
  }
  Kernel k(make_market_kernel_config(setup, 1));
  k.run();
  const auto& ex = k.agent_as<ExchangeAgent>(AgentId{0});
  const auto trades = ex.trade_tape().size();
  EXPECT_GT(trades, 0u);
  const auto tape = trade_tape(k.terminate());
  EXPECT_EQ(tape.size(), trades);
}
