#pragma once

#include "evsim/gym/markets_environment.hpp"

namespace evsim::envs {

inline constexpr const char* kExecutionName = "markets-execution-v0";

struct ExecutionConfig {
  market::Quantity parent_order_size{20'000};
  market::Side direction{market::Side::Buy};
  Duration time_window{std::chrono::hours(4)};
  market::Quantity child_order_size{50};
  /// Cents per unexecuted share at the end of the window.
  double penalty{100.0};
  Duration timestep{std::chrono::seconds(10)};
  SimTime starting_time{clock_time(9, 35)};
  int k{3};
  /// Divide the terminal penalty by parent_order_size like the step rewards.
  bool scale_penalty{true};
  market::MarketSetup market;
};

/// Parent-order execution within a time window using child MARKET or LIMIT
/// orders. Step reward is the implementation PNL of fills against the entry
/// mid, per parent share; unexecuted shares cost `penalty` each at the end.
///
/// State: (holdings_pct, time_pct, difference_pct, imbalance over 5 levels,
/// imbalance over all levels, price impact, spread, mid - last trade, R^k).
class Execution final : public gym::MarketsEnvironment {
 public:
  enum Action : int { kMarket = 0, kDoNothing = 1, kLimit = 2 };

  explicit Execution(ExecutionConfig config = {});

  std::string name() const override { return kExecutionName; }
  int action_count() const override { return 3; }
  std::size_t state_size() const override { return 8 + static_cast<std::size_t>(config_.k); }
  const ExecutionConfig& config() const { return config_; }

  double entry_price() const { return entry_price_; }
  market::Quantity executed_qty() const { return executed_qty_; }
  /// Sum of numside * (entry - fill) * qty over the episode's fills, cents.
  double pnl_cents() const { return pnl_cents_; }

  /// Commands for one action id given the latest raw state; the child size is
  /// truncated to the unexecuted remainder and LIMIT without a near touch
  /// becomes DO NOTHING.
  gym::OrderCommands commands_for(int action, const RawState& current) const;
  /// Terminal update for an executed quantity.
  double terminal_update(market::Quantity executed) const;

 protected:
  void begin_episode(const RawState& first) override;
  ActionBundle translate_action(int action, const RawState& current) override;
  std::vector<double> state_of(const RawState& raw) const override;
  double step_reward(const RawState& previous, const RawState& current) override;
  bool episode_done(const RawState& raw) const override;
  double final_update(const RawState& raw) override;
  void describe(const RawState& raw, gym::Info& info) const override;

 private:
  ExecutionConfig config_;
  double entry_price_{0.0};
  market::Quantity executed_qty_{0};
  double pnl_cents_{0.0};
  market::Quantity child_sent_{0};
  double terminal_{0.0};
};

}  // namespace evsim::envs
