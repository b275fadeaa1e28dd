#pragma once

#include "evsim/gym/markets_environment.hpp"

namespace evsim::envs {

inline constexpr const char* kDailyInvestorName = "markets-daily_investor-v0";

struct DailyInvestorConfig {
  market::Quantity order_fixed_size{100};
  Duration timestep{std::chrono::seconds(60)};
  SimTime first_wakeup{clock_time(9, 35)};
  int k{3};
  std::int64_t initial_cash{10'000'000};
  market::MarketSetup market;
};

/// Minute-bar investor: BUY / HOLD / SELL a fixed size at market, rewarded by
/// the change in marked-to-market value. Episodes end at the close.
///
/// State: (holdings, imbalance over 3 levels, spread, mid - last trade, R^k).
class DailyInvestor final : public gym::MarketsEnvironment {
 public:
  enum Action : int { kBuy = 0, kHold = 1, kSell = 2 };

  explicit DailyInvestor(DailyInvestorConfig config = {});

  std::string name() const override { return kDailyInvestorName; }
  int action_count() const override { return 3; }
  std::size_t state_size() const override { return 4 + static_cast<std::size_t>(config_.k); }
  const DailyInvestorConfig& config() const { return config_; }

  /// Commands for one action id; UsageError outside {0, 1, 2}.
  gym::OrderCommands commands_for(int action) const;

 protected:
  void begin_episode(const RawState&) override {}
  ActionBundle translate_action(int action, const RawState& current) override;
  std::vector<double> state_of(const RawState& raw) const override;
  double step_reward(const RawState& previous, const RawState& current) override;
  bool episode_done(const RawState& raw) const override;
  void describe(const RawState& raw, gym::Info& info) const override;

 private:
  DailyInvestorConfig config_;
};

}  // namespace evsim::envs
