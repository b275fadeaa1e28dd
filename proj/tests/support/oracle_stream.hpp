#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evsim/market/order_book.hpp"
#include "naive_matcher.hpp"

namespace evsim::oracle {

/// Drives the same random operation stream (limit, market, cancel) through the
/// real book and the naive matcher. Returns an empty string when every trade
/// list and the final book agree, otherwise a description of the first mismatch.
inline std::string compare_with_oracle(std::uint64_t seed, int ops, market::Price low = 9990, int band_ticks = 20) {
  using namespace market;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 99);
  std::uniform_int_distribution<int> tick(0, band_ticks - 1);
  std::uniform_int_distribution<Quantity> qty(1, 100);
  std::uniform_int_distribution<std::uint32_t> owner(0, 4);

  OrderBook book;
  NaiveMatcher ref;
  std::vector<OrderId> issued;
  std::uint32_t next = 1;

  for (int i = 0; i < ops; ++i) {
    const SimTime now{i};
    const int k = kind(rng);
    const Side side = (rng() & 1) ? Side::Buy : Side::Sell;
    std::vector<Trade> got, want;
    if (k < 55) {
      const OrderId id = make_order_id(AgentId{owner(rng)}, next++);
      const Price p = low + tick(rng);
      const Quantity q = qty(rng);
      const AgentId who{static_cast<std::uint32_t>(id >> 32)};
      got = book.submit_limit(Order{id, who, side, q, p, now, 0});
      want = ref.submit_limit(id, who, side, q, p, now);
      issued.push_back(id);
    } else if (k < 75) {
      const OrderId id = make_order_id(AgentId{owner(rng)}, next++);
      const Quantity q = qty(rng);
      const AgentId who{static_cast<std::uint32_t>(id >> 32)};
      got = book.submit_market(id, who, side, q, now);
      want = ref.submit_market(id, who, side, q, now);
    } else if (!issued.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, issued.size() - 1);
      const OrderId id = issued[pick(rng)];
      const Quantity a = book.cancel(id), b = ref.cancel(id);
      if (a != b) return "op " + std::to_string(i) + ": cancel returned " + std::to_string(a) + " vs " + std::to_string(b);
    }
    if (got != want)
      return "op " + std::to_string(i) + ": " + std::to_string(got.size()) + " trades vs " +
             std::to_string(want.size()) + " from the reference";
    const auto bb = book.best_bid(), ba = book.best_ask();
    if (bb && ba && !(*bb < *ba)) return "op " + std::to_string(i) + ": crossed book";
  }

  const auto snap = book.snapshot();
  if (snap.bids != ref.levels(Side::Buy)) return "final bid ladder differs";
  if (snap.asks != ref.levels(Side::Sell)) return "final ask ladder differs";
  if (snap.last_transaction != ref.last_transaction()) return "last transaction differs";
  return {};
}

}  // namespace evsim::oracle
