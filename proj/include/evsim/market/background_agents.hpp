#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <span>

#include "evsim/kernel/agent.hpp"
#include "evsim/market/exchange_agent.hpp"
#include "evsim/market/fundamental.hpp"
#include "evsim/market/messages.hpp"

namespace evsim::market {

struct NoiseAgentConfig {
  /// Mean of the exponential inter-arrival between wakeups.
  Duration wake_mean{std::chrono::seconds(10)};
  Quantity min_qty{1};
  Quantity max_qty{10};
};

struct ValueAgentConfig {
  Duration wake_mean{std::chrono::seconds(2)};
  Quantity min_qty{100};
  Quantity max_qty{500};
  /// Std dev of the agent's noisy view of the fundamental, cents.
  double obs_noise{10.0};
};

struct MomentumAgentConfig {
  Duration wake_mean{std::chrono::seconds(30)};
  /// Windows counted in observed mids (one per wakeup).
  int short_window{20};
  int long_window{50};
  Quantity order_size{20};
};

struct MarketOrderDecision {
  Side side{Side::Buy};
  Quantity qty{0};
};

struct LimitQuote {
  Side side{Side::Buy};
  Price price{0};

  friend bool operator==(const LimitQuote&, const LimitQuote&) = default;
};

/// Uniform side, uniform size in [min_qty, max_qty]; nothing while the market is closed.
std::optional<MarketOrderDecision> noise_policy(const NoiseAgentConfig& cfg, bool market_open, std::mt19937_64& rng);

/// Buy when the observed value exceeds the mid, otherwise sell (ties sell).
/// The quote sits at the observed value clamped into the spread so it never
/// crosses. On a one-sided book the empty side is refilled at the observed
/// value (never crossing); an empty book holds.
std::optional<LimitQuote> value_policy(const BookStats& stats, double observation);

/// Short moving average of mids above the long one buys, below sells, equal holds.
/// Holds until `long_window` mids are available.
std::optional<Side> momentum_policy(std::span<const double> mids, int short_window, int long_window);

/// Shared plumbing for background traders: exchange address, order ids and
/// exponential wakeups inside market hours.
class TraderAgent : public Agent {
 public:
  TraderAgent(std::string name, AgentId exchange, MarketHours hours, Duration wake_mean);

  void kernel_starting(Kernel& kernel) override;
  void wakeup(Kernel& kernel) override;

 protected:
  virtual void on_trading_wakeup(Kernel& kernel) = 0;

  OrderId next_order_id() { return make_order_id(id(), next_local_seq_++); }
  void send_to_exchange(Kernel& kernel, MarketPayload payload);
  Duration draw_inter_arrival();

  AgentId exchange_;
  MarketHours hours_;

 private:
  Duration wake_mean_;
  std::uint32_t next_local_seq_{0};
};

class NoiseAgent final : public TraderAgent {
 public:
  NoiseAgent(std::string name, AgentId exchange, MarketHours hours, NoiseAgentConfig config);

 protected:
  void on_trading_wakeup(Kernel& kernel) override;

 private:
  NoiseAgentConfig config_;
};

class ValueAgent final : public TraderAgent {
 public:
  ValueAgent(std::string name, AgentId exchange, MarketHours hours, ValueAgentConfig config,
             std::shared_ptr<FundamentalProcess> fundamental);

  void receive_message(Kernel& kernel, const Message& message) override;

 protected:
  void on_trading_wakeup(Kernel& kernel) override;

 private:
  ValueAgentConfig config_;
  std::shared_ptr<FundamentalProcess> fundamental_;
  std::normal_distribution<double> obs_noise_;
  std::optional<OrderId> live_order_;
};

class MomentumAgent final : public TraderAgent {
 public:
  MomentumAgent(std::string name, AgentId exchange, MarketHours hours, MomentumAgentConfig config);

  void receive_message(Kernel& kernel, const Message& message) override;

 protected:
  void on_trading_wakeup(Kernel& kernel) override;

 private:
  MomentumAgentConfig config_;
  std::deque<double> mids_;
};

}  // namespace evsim::market
