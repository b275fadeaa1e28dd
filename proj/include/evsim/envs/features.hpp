#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evsim/kernel/raw_state.hpp"

namespace evsim::envs {

/// Bid volume over total volume of the first `levels` levels of each side.
/// No bids gives 0, no asks gives 1, an empty book 0.5.
double imbalance(std::span<const std::int64_t> bid_volumes, std::span<const std::int64_t> ask_volumes,
                 std::size_t levels);
/// Same rule over whole-side totals.
double imbalance_totals(std::int64_t bid_volume, std::int64_t ask_volume);

std::optional<std::int64_t> best_bid(const RawState& raw);
std::optional<std::int64_t> best_ask(const RawState& raw);
std::optional<double> mid_price(const RawState& raw);

/// best ask - best bid; 0 on a one-sided book.
double spread_feature(const RawState& raw);
/// mid - last transaction; 0 when either is undefined.
double direction_feature(const RawState& raw);
/// (r_t, r_{t-1}, ..., r_{t-k+1}) with r_{t-i} = mid_{t-i} - mid_{t-i-1} over the
/// per-wakeup mid history. Entries whose mids are missing or undefined are 0.
std::vector<double> mid_returns(const RawState& raw, int k);

/// cash + holdings * last transaction, in cents; holdings count 0 before any trade.
std::int64_t marked_to_market(const RawState& raw);

}  // namespace evsim::envs
