#include <gtest/gtest.h>

#include "evsim/market/order_book.hpp"
#include "support/naive_matcher.hpp"
#include "support/oracle_stream.hpp"

using namespace evsim;
using namespace evsim::market;

namespace {

const AgentId kA{1}, kB{2}, kC{3};

Order limit(OrderId id, AgentId who, Side side, Quantity qty, Price price) {
  return Order{id, who, side, qty, price, SimTime{0}, 0};
}

std::vector<std::pair<Quantity, Price>> fills(const std::vector<Trade>& trades) {
  std::vector<std::pair<Quantity, Price>> out;
  for (const auto& t : trades) out.emplace_back(t.qty, t.price);
  return out;
}

using Fills = std::vector<std::pair<Quantity, Price>>;

}  // namespace

TEST(OrderBook, LimitIntoEmptyBookRests) {
  OrderBook b;
  EXPECT_TRUE(b.submit_limit(limit(1, kA, Side::Buy, 100, 99)).empty());
  EXPECT_EQ(b.snapshot().bids, (std::vector<LevelView>{{99, 100}}));
  EXPECT_EQ(b.total_volume(Side::Buy), 100);
}

TEST(OrderBook, MarketableLimitWalksLevelsAndRestsRemainder) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Sell, 100, 101));
  b.submit_limit(limit(2, kA, Side::Sell, 50, 102));
  const auto t = b.submit_limit(limit(3, kB, Side::Buy, 150, 102));
  EXPECT_EQ(fills(t), (Fills{{100, 101}, {50, 102}}));
  EXPECT_TRUE(b.snapshot().asks.empty());

  OrderBook c;
  c.submit_limit(limit(1, kA, Side::Sell, 100, 101));
  c.submit_limit(limit(2, kA, Side::Sell, 50, 102));
  EXPECT_EQ(fills(c.submit_limit(limit(3, kB, Side::Buy, 120, 102))), (Fills{{100, 101}, {20, 102}}));
  EXPECT_EQ(c.snapshot().asks, (std::vector<LevelView>{{102, 30}}));
  EXPECT_EQ(c.total_volume(Side::Sell), 30);
}

TEST(OrderBook, FifoWithinLevel) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Buy, 60, 100));
  b.submit_limit(limit(2, kB, Side::Buy, 60, 100));
  const auto t = b.submit_limit(limit(3, kC, Side::Sell, 100, 100));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].resting_order, 1u);
  EXPECT_EQ(t[0].qty, 60);
  EXPECT_EQ(t[1].resting_order, 2u);
  EXPECT_EQ(t[1].qty, 40);
  EXPECT_EQ(b.open_qty(2), 20);
}

TEST(OrderBook, MarketOrdersDiscardRemainder) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Sell, 100, 101));
  b.submit_limit(limit(2, kA, Side::Sell, 50, 102));
  EXPECT_EQ(fills(b.submit_market(3, kB, Side::Buy, 120, SimTime{0})), (Fills{{100, 101}, {20, 102}}));
  EXPECT_TRUE(b.submit_market(4, kB, Side::Buy, 500, SimTime{0}).size() == 1);
  EXPECT_TRUE(b.submit_market(5, kB, Side::Buy, 50, SimTime{0}).empty());
  EXPECT_EQ(b.resting_count(), 0u);
  EXPECT_FALSE(b.best_bid().has_value());
}

TEST(OrderBook, MarketSellEmptiesBids) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Buy, 100, 99));
  EXPECT_EQ(fills(b.submit_market(2, kB, Side::Sell, 100, SimTime{0})), (Fills{{100, 99}}));
  EXPECT_TRUE(b.snapshot().bids.empty());
  EXPECT_EQ(b.total_volume(Side::Buy), 0);
}

TEST(OrderBook, RejectsBadOrdersWithoutChange) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Buy, 10, 99));
  EXPECT_EQ(b.validate_limit(limit(2, kA, Side::Buy, 0, 99)), RejectReason::NonPositiveQuantity);
  EXPECT_EQ(b.validate_limit(limit(2, kA, Side::Buy, 5, 0)), RejectReason::NonPositivePrice);
  EXPECT_EQ(b.validate_limit(limit(1, kA, Side::Buy, 5, 98)), RejectReason::DuplicateOrderId);
  EXPECT_THROW(b.submit_limit(limit(2, kA, Side::Buy, -1, 99)), std::invalid_argument);
  EXPECT_THROW(b.submit_market(3, kA, Side::Sell, 0, SimTime{0}), std::invalid_argument);
  EXPECT_EQ(b.snapshot().bids, (std::vector<LevelView>{{99, 10}}));
}

TEST(OrderBook, CancelRemovesAndIsIdempotent) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Sell, 30, 102));
  EXPECT_EQ(b.cancel(1), 30);
  EXPECT_TRUE(b.snapshot().asks.empty());
  EXPECT_EQ(b.cancel(1), 0);
  EXPECT_EQ(b.cancel(77), 0);
  EXPECT_EQ(b.total_volume(Side::Sell), 0);
}

TEST(OrderBook, CancelAfterPartialFillReturnsRemainder) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Buy, 100, 100));
  b.submit_market(2, kB, Side::Sell, 50, SimTime{0});
  EXPECT_EQ(b.cancel(1), 50);
}

TEST(OrderBook, SnapshotDepthAndTotals) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Buy, 10, 100));
  b.submit_limit(limit(2, kA, Side::Buy, 5, 99));
  auto s = b.snapshot(1);
  EXPECT_EQ(s.bids, (std::vector<LevelView>{{100, 10}}));
  EXPECT_EQ(s.bid_volume_total, 15);
  EXPECT_EQ(b.snapshot(kAllLevels).bids.size(), 2u);
  EXPECT_TRUE(OrderBook{}.snapshot().bids.empty());
  EXPECT_TRUE(OrderBook{}.snapshot().asks.empty());
}

TEST(OrderBook, Stats) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Buy, 10, 99));
  auto s = b.stats();
  EXPECT_FALSE(s.mid.has_value());
  EXPECT_FALSE(s.spread.has_value());
  b.submit_limit(limit(2, kA, Side::Sell, 10, 101));
  s = b.stats();
  EXPECT_EQ(s.mid, 100.0);
  EXPECT_EQ(s.spread, 2);
  EXPECT_FALSE(s.last_transaction.has_value());
  b.submit_market(3, kB, Side::Buy, 1, SimTime{0});
  EXPECT_EQ(b.stats().last_transaction, 101);
}

TEST(OrderBook, VolumeIsConserved) {
  OrderBook b;
  b.submit_limit(limit(1, kA, Side::Sell, 40, 101));
  const auto t = b.submit_limit(limit(2, kB, Side::Buy, 100, 102));
  Quantity traded = 0;
  for (const auto& x : t) traded += x.qty;
  EXPECT_EQ(traded + *b.open_qty(2), 100);
  const auto m = b.submit_market(3, kC, Side::Sell, 80, SimTime{0});
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].qty, 60);
}

TEST(NaiveMatcher, AgreesOnTheWorkedExample) {
  oracle::NaiveMatcher m;
  m.submit_limit(1, kA, Side::Sell, 100, 101, SimTime{0});
  m.submit_limit(2, kA, Side::Sell, 50, 102, SimTime{0});
  EXPECT_EQ(fills(m.submit_limit(3, kB, Side::Buy, 120, 102, SimTime{0})), (Fills{{100, 101}, {20, 102}}));
  EXPECT_EQ(m.levels(Side::Sell), (std::vector<LevelView>{{102, 30}}));
}

TEST(OrderBook, MatchesNaiveReferenceOnRandomStreams) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto mismatch = oracle::compare_with_oracle(seed, 1000);
    EXPECT_TRUE(mismatch.empty()) << "seed " << seed << ": " << mismatch;
  }
}

TEST(OrderBook, MatchesNaiveReferenceInANarrowBand) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto mismatch = oracle::compare_with_oracle(seed, 500, 100, 3);
    EXPECT_TRUE(mismatch.empty()) << "seed " << seed << ": " << mismatch;
  }
}
