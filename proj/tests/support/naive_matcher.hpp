#pragma once

// Reference matcher for oracle tests: resting orders in one flat vector,
// every match found by a linear scan. Deliberately slow and obvious.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "evsim/market/types.hpp"

namespace evsim::oracle {

using market::LevelView;
using market::OrderId;
using market::Price;
using market::Quantity;
using market::Side;
using market::Trade;

class NaiveMatcher {
 public:
  std::vector<Trade> submit_limit(OrderId id, AgentId owner, Side side, Quantity qty, Price price, SimTime now) {
    auto trades = match(id, owner, side, qty, price, now);
    if (qty > 0) resting_.push_back(Resting{id, owner, side, price, qty, next_seq_});
    ++next_seq_;
    return trades;
  }

  std::vector<Trade> submit_market(OrderId id, AgentId owner, Side side, Quantity qty, SimTime now) {
    ++next_seq_;
    return match(id, owner, side, qty, std::nullopt, now);
  }

  Quantity cancel(OrderId id) {
    for (std::size_t i = 0; i < resting_.size(); ++i) {
      if (resting_[i].id != id) continue;
      const Quantity q = resting_[i].qty;
      resting_.erase(resting_.begin() + static_cast<std::ptrdiff_t>(i));
      return q;
    }
    return 0;
  }

  std::vector<LevelView> levels(Side side) const {
    std::map<Price, Quantity> agg;
    for (const auto& r : resting_)
      if (r.side == side) agg[r.price] += r.qty;
    std::vector<LevelView> out;
    for (const auto& [p, q] : agg) out.push_back(LevelView{p, q});
    if (side == Side::Buy) std::reverse(out.begin(), out.end());
    return out;
  }

  std::optional<Price> last_transaction() const { return last_; }

 private:
  struct Resting {
    OrderId id;
    AgentId owner;
    Side side;
    Price price;
    Quantity qty;
    std::uint64_t seq;
  };

  std::vector<Trade> match(OrderId id, AgentId owner, Side side, Quantity& qty, std::optional<Price> limit,
                           SimTime now) {
    std::vector<Trade> trades;
    while (qty > 0) {
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < resting_.size(); ++i) {
        const auto& r = resting_[i];
        if (r.side == side) continue;
        if (limit && (side == Side::Buy ? r.price > *limit : r.price < *limit)) continue;
        if (!best) {
          best = i;
          continue;
        }
        const auto& b = resting_[*best];
        const bool better_price = side == Side::Buy ? r.price < b.price : r.price > b.price;
        if (better_price || (r.price == b.price && r.seq < b.seq)) best = i;
      }
      if (!best) break;
      auto& r = resting_[*best];
      const Quantity q = std::min(qty, r.qty);
      trades.push_back(Trade{r.price, q, owner, r.owner, id, r.id, side, now});
      last_ = r.price;
      qty -= q;
      r.qty -= q;
      if (r.qty == 0) resting_.erase(resting_.begin() + static_cast<std::ptrdiff_t>(*best));
    }
    return trades;
  }

  std::vector<Resting> resting_;
  std::uint64_t next_seq_{0};
  std::optional<Price> last_;
};

}  // namespace evsim::oracle
