#include "evsim/market/background_agents.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evsim/kernel/kernel.hpp"

namespace evsim::market {

std::optional<MarketOrderDecision> noise_policy(const NoiseAgentConfig& cfg, bool market_open, std::mt19937_64& rng) {
  if (!market_open) return std::nullopt;
  std::bernoulli_distribution buy(0.5);
  std::uniform_int_distribution<Quantity> qty(cfg.min_qty, cfg.max_qty);
  const Side side = buy(rng) ? Side::Buy : Side::Sell;
  return MarketOrderDecision{side, qty(rng)};
}

std::optional<LimitQuote> value_policy(const BookStats& stats, double observation) {
  const auto floor_obs = static_cast<Price>(std::floor(observation));
  const auto ceil_obs = static_cast<Price>(std::ceil(observation));

  if (stats.best_bid && stats.best_ask) {
    const Price bid = *stats.best_bid;
    const Price ask = *stats.best_ask;
    if (observation > *stats.mid) return LimitQuote{Side::Buy, std::clamp(floor_obs, bid, ask - 1)};
    return LimitQuote{Side::Sell, std::clamp(ceil_obs, bid + 1, ask)};
  }
  // One-sided: refill the empty side at the valuation, never crossing.
  if (stats.best_bid) return LimitQuote{Side::Sell, std::max(ceil_obs, *stats.best_bid + 1)};
  if (stats.best_ask) {
    const Price price = std::min(floor_obs, *stats.best_ask - 1);
    if (price < 1) return std::nullopt;
    return LimitQuote{Side::Buy, price};
  }
  return std::nullopt;
}

std::optional<Side> momentum_policy(std::span<const double> mids, int short_window, int long_window) {
  if (short_window <= 0 || long_window <= short_window) return std::nullopt;
  if (mids.size() < static_cast<std::size_t>(long_window)) return std::nullopt;
  const auto tail = [&](int n) { return std::accumulate(mids.end() - n, mids.end(), 0.0); };
  // Cross-multiplied so equal averages of half-cent mids compare exactly.
  const double lhs = tail(short_window) * long_window;
  const double rhs = tail(long_window) * short_window;
  if (lhs > rhs) return Side::Buy;
  if (lhs < rhs) return Side::Sell;
  return std::nullopt;
}

TraderAgent::TraderAgent(std::string name, AgentId exchange, MarketHours hours, Duration wake_mean)
    : Agent(std::move(name)), exchange_(exchange), hours_(hours), wake_mean_(wake_mean) {
  if (wake_mean_ <= Duration::zero()) throw ConfigError("wake mean must be positive");
}

Duration TraderAgent::draw_inter_arrival() {
  std::exponential_distribution<double> gap(1.0 / static_cast<double>(wake_mean_.count()));
  return Duration{std::max<std::int64_t>(1, std::llround(gap(rng())))};
}

void TraderAgent::kernel_starting(Kernel& kernel) {
  const SimTime first = std::max(kernel.now(), hours_.open_at) + draw_inter_arrival();
  if (first < hours_.close_at) kernel.schedule_wakeup(id(), first);
}

void TraderAgent::wakeup(Kernel& kernel) {
  if (!hours_.is_open(kernel.now())) return;
  on_trading_wakeup(kernel);
  const SimTime next = kernel.now() + draw_inter_arrival();
  if (next < hours_.close_at) kernel.schedule_wakeup(id(), next);
}

void TraderAgent::send_to_exchange(Kernel& kernel, MarketPayload payload) {
  kernel.send(id(), exchange_, make_body(std::move(payload)));
}

NoiseAgent::NoiseAgent(std::string name, AgentId exchange, MarketHours hours, NoiseAgentConfig config)
    : TraderAgent(std::move(name), exchange, hours, config.wake_mean), config_(config) {
  if (config_.min_qty <= 0 || config_.max_qty < config_.min_qty) throw ConfigError("noise order size bounds invalid");
}

void NoiseAgent::on_trading_wakeup(Kernel& kernel) {
  if (auto order = noise_policy(config_, hours_.is_open(kernel.now()), rng()))
    send_to_exchange(kernel, MarketOrderRequest{next_order_id(), order->side, order->qty});
}

ValueAgent::ValueAgent(std::string name, AgentId exchange, MarketHours hours, ValueAgentConfig config,
                       std::shared_ptr<FundamentalProcess> fundamental)
    : TraderAgent(std::move(name), exchange, hours, config.wake_mean),
      config_(config),
      fundamental_(std::move(fundamental)),
      obs_noise_(0.0, config.obs_noise) {
  if (config_.min_qty <= 0 || config_.max_qty < config_.min_qty) throw ConfigError("value order size bounds invalid");
  if (config_.obs_noise < 0.0) throw ConfigError("value observation noise must be non-negative");
  if (!fundamental_) throw ConfigError("value agent needs a fundamental process");
}

void ValueAgent::on_trading_wakeup(Kernel& kernel) { send_to_exchange(kernel, StatsQuery{}); }

void ValueAgent::receive_message(Kernel& kernel, const Message& message) {
  const MarketPayload* payload = market_payload(message);
  if (payload == nullptr) return;
  const auto* reply = std::get_if<StatsReply>(payload);
  if (reply == nullptr || !hours_.is_open(kernel.now())) return;

  // A partly filled quote is still live, so the previous id is always cancelled.
  double observation = static_cast<double>(fundamental_->at(kernel.now()));
  if (config_.obs_noise > 0.0) observation += obs_noise_(rng());
  const auto quote = value_policy(reply->stats, observation);
  if (!quote) return;

  if (live_order_) send_to_exchange(kernel, CancelRequest{*live_order_});
  std::uniform_int_distribution<Quantity> qty(config_.min_qty, config_.max_qty);
  live_order_ = next_order_id();
  send_to_exchange(kernel, LimitOrderRequest{*live_order_, quote->side, qty(rng()), quote->price});
}

MomentumAgent::MomentumAgent(std::string name, AgentId exchange, MarketHours hours, MomentumAgentConfig config)
    : TraderAgent(std::move(name), exchange, hours, config.wake_mean), config_(config) {
  if (config_.short_window <= 0 || config_.long_window <= config_.short_window)
    throw ConfigError("momentum windows must satisfy 0 < short < long");
  if (config_.order_size <= 0) throw ConfigError("momentum order size must be positive");
}

void MomentumAgent::on_trading_wakeup(Kernel& kernel) { send_to_exchange(kernel, StatsQuery{}); }

void MomentumAgent::receive_message(Kernel& kernel, const Message& message) {
  const MarketPayload* payload = market_payload(message);
  if (payload == nullptr) return;
  const auto* reply = std::get_if<StatsReply>(payload);
  if (reply == nullptr || !hours_.is_open(kernel.now())) return;
  if (!reply->stats.mid) return;

  mids_.push_back(*reply->stats.mid);
  if (mids_.size() > static_cast<std::size_t>(config_.long_window)) mids_.pop_front();

  const std::vector<double> window(mids_.begin(), mids_.end());
  if (auto side = momentum_policy(window, config_.short_window, config_.long_window))
    send_to_exchange(kernel, MarketOrderRequest{next_order_id(), *side, config_.order_size});
}

}  // namespace evsim::market
