#include "evsim/envs/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evsim/gym/markets_gym_agent.hpp"

namespace evsim::envs {

namespace rk = gym::raw_keys;

double imbalance_totals(std::int64_t bid_volume, std::int64_t ask_volume) {
  if (bid_volume <= 0 && ask_volume <= 0) return 0.5;
  if (bid_volume <= 0) return 0.0;
  if (ask_volume <= 0) return 1.0;
  return static_cast<double>(bid_volume) / static_cast<double>(bid_volume + ask_volume);
}

double imbalance(std::span<const std::int64_t> bid_volumes, std::span<const std::int64_t> ask_volumes,
                 std::size_t levels) {
  const auto head = [levels](std::span<const std::int64_t> v) {
    const auto n = std::min(levels, v.size());
    return std::accumulate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), std::int64_t{0});
  };
  return imbalance_totals(head(bid_volumes), head(ask_volumes));
}

std::optional<std::int64_t> best_bid(const RawState& raw) {
  const auto& prices = raw.integers(rk::kBidPrices);
  if (prices.empty()) return std::nullopt;
  return prices.front();
}

std::optional<std::int64_t> best_ask(const RawState& raw) {
  const auto& prices = raw.integers(rk::kAskPrices);
  if (prices.empty()) return std::nullopt;
  return prices.front();
}

std::optional<double> mid_price(const RawState& raw) {
  const auto bid = best_bid(raw);
  const auto ask = best_ask(raw);
  if (!bid || !ask) return std::nullopt;
  return (static_cast<double>(*bid) + static_cast<double>(*ask)) / 2.0;
}

double spread_feature(const RawState& raw) {
  const auto bid = best_bid(raw);
  const auto ask = best_ask(raw);
  if (!bid || !ask) return 0.0;
  return static_cast<double>(*ask - *bid);
}

double direction_feature(const RawState& raw) {
  const auto mid = mid_price(raw);
  const auto last = raw.optional_integer(rk::kLastTransaction);
  if (!mid || !last) return 0.0;
  return *mid - static_cast<double>(*last);
}

std::vector<double> mid_returns(const RawState& raw, int k) {
  std::vector<double> out(static_cast<std::size_t>(std::max(k, 0)), 0.0);
  const auto& mids = raw.reals(rk::kMidHistory);
  const auto n = static_cast<std::ptrdiff_t>(mids.size());
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
    const std::ptrdiff_t now = n - 1 - i;
    if (now < 1) break;
    const double diff = mids[static_cast<std::size_t>(now)] - mids[static_cast<std::size_t>(now - 1)];
    if (std::isfinite(diff)) out[static_cast<std::size_t>(i)] = diff;
  }
  return out;
}

std::int64_t marked_to_market(const RawState& raw) {
  const std::int64_t last = raw.optional_integer(rk::kLastTransaction).value_or(0);
  return raw.integer(rk::kCash) + raw.integer(rk::kHoldings) * last;
}

}  // namespace evsim::envs
