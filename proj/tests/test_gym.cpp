#include <gtest/gtest.h>

#include "evsim/envs/registry.hpp"
#include "evsim/gym/markets_gym_agent.hpp"
#include "evsim/market/population.hpp"

using namespace evsim;
using namespace evsim::gym;
using market::Side;

namespace {

namespace rk = raw_keys;

// Exchange (seeded book, no background traders) plus the gym agent.
struct QuietMarket {
  explicit QuietMarket(Duration step = std::chrono::seconds(60), std::int64_t cash = 1'000'000) {
    market::MarketSetup setup;
    setup.population.noise_count = 0;
    setup.population.value_count = 0;
    setup.population.momentum_count = 0;
    GymAgentConfig a;
    a.timestep = step;
    a.initial_cash = cash;
    std::vector<std::unique_ptr<Agent>> extra;
    extra.push_back(std::make_unique<MarketsGymAgent>(a));
    market::MarketRoster roster;
    kernel = std::make_unique<Kernel>(market::make_market_kernel_config(setup, 1, std::move(extra), 0, &roster));
    gym_id = roster.extra.at(0);
  }
  MarketsGymAgent& agent() { return kernel->agent_as<MarketsGymAgent>(gym_id); }

  std::unique_ptr<Kernel> kernel;
  AgentId gym_id;
};

const nlohmann::json kSmallPopulation = {{"noise_count", 20}, {"value_count", 3}, {"momentum_count", 1}};

}  // namespace

TEST(GymAgent, WakesOnTheGrid) {
  QuietMarket m;
  auto r = m.kernel->run();
  ASSERT_EQ(r.status, RunStatus::Interrupted);
  EXPECT_EQ(r.raw_state->integer(rk::kNow), clock_time(9, 35).nanos);
  EXPECT_EQ(r.raw_state->integer(rk::kWakeupIndex), 0);
  r = m.kernel->run(ActionBundle{OrderCommands{Noop{}}});
  EXPECT_EQ(r.raw_state->integer(rk::kNow), clock_time(9, 36).nanos);
  EXPECT_EQ(r.raw_state->integer(rk::kWakeupIndex), 1);
}

TEST(GymAgent, BuyFillUpdatesLedger) {
  QuietMarket m;
  m.kernel->run();
  auto r = m.kernel->run(ActionBundle{OrderCommands{PlaceMarket{Side::Buy, 100}}});
  EXPECT_EQ(r.raw_state->integer(rk::kHoldings), 100);
  EXPECT_EQ(r.raw_state->integer(rk::kCash), 1'000'000 - 100 * 10'001);
  EXPECT_EQ(r.raw_state->integers(rk::kFillPrices), std::vector<std::int64_t>{10'001});
  EXPECT_EQ(r.raw_state->integers(rk::kFillSides), std::vector<std::int64_t>{1});
  EXPECT_EQ(r.raw_state->optional_integer(rk::kLastTransaction), 10'001);
  r = m.kernel->run(ActionBundle{OrderCommands{}});
  EXPECT_TRUE(r.raw_state->integers(rk::kFillPrices).empty());
}

TEST(GymAgent, NoTradeYetMeansNoLastTransaction) {
  QuietMarket m;
  const auto r = m.kernel->run();
  EXPECT_FALSE(r.raw_state->contains(rk::kLastTransaction));
  EXPECT_TRUE(r.raw_state->flag(rk::kHasMarketData));
  EXPECT_EQ(r.raw_state->integers(rk::kBidPrices).size(), 3u);
}

TEST(GymAgent, NoopSendsNothing) {
  QuietMarket m;
  m.kernel->run();
  const auto before = m.kernel->routed_count();
  m.kernel->run(ActionBundle{OrderCommands{Noop{}}});
  EXPECT_EQ(m.kernel->routed_count() - before, 1u);  // only the next wakeup
}

TEST(GymAgent, CancelAllThenLimitReplacesTheOpenOrder) {
  QuietMarket m;
  m.kernel->run();
  auto r = m.kernel->run(ActionBundle{OrderCommands{PlaceLimit{Side::Buy, 50, 9'990}}});
  EXPECT_EQ(r.raw_state->integers(rk::kOpenOrderPrices), std::vector<std::int64_t>{9'990});
  r = m.kernel->run(ActionBundle{OrderCommands{CancelAll{}, PlaceLimit{Side::Buy, 50, 9'991}}});
  EXPECT_EQ(r.raw_state->integers(rk::kOpenOrderPrices), std::vector<std::int64_t>{9'991});
  EXPECT_EQ(m.agent().open_orders().size(), 1u);
  const auto& book = m.kernel->agent_as<market::ExchangeAgent>(AgentId{0}).book();
  EXPECT_EQ(book.resting_count(m.gym_id), 1u);
}

TEST(GymAgent, InvalidCommandsAreDroppedLocally) {
  QuietMarket m;
  m.kernel->run();
  const auto before = m.kernel->routed_count();
  m.kernel->run(ActionBundle{OrderCommands{PlaceMarket{Side::Buy, 0}, PlaceLimit{Side::Sell, 10, 0}}});
  EXPECT_EQ(m.kernel->routed_count() - before, 1u);
  EXPECT_EQ(m.agent().rejected_commands(), 2u);
}

TEST(GymAgent, WrongBundleTypeIsUsageError) {
  QuietMarket m;
  m.kernel->run();
  EXPECT_THROW(m.kernel->run(ActionBundle{42}), UsageError);
}

TEST(GymAgent, TenSecondGridGives1440WakeupsInFourHours) {
  QuietMarket m(std::chrono::seconds(10));
  auto r = m.kernel->run();
  int count = 0;
  while (r.status == RunStatus::Interrupted && r.raw_state->integer(rk::kNow) < (clock_time(13, 35)).nanos) {
    ++count;
    r = m.kernel->run(ActionBundle{OrderCommands{}});
  }
  EXPECT_EQ(count, 1440);
}

TEST(Environment, UsageErrors) {
  auto env = envs::make_env(envs::kDailyInvestorName, nlohmann::json::object(), kSmallPopulation);
  EXPECT_THROW(env->step(1), UsageError);
  env->reset();
  EXPECT_THROW(env->step(7), UsageError);
  EXPECT_THROW(env->step(-1), UsageError);
  EXPECT_TRUE(env->active());
}

TEST(Environment, DailyFirstStateAndHoldStep) {
  auto env = envs::make_env(envs::kDailyInvestorName, nlohmann::json::object(), kSmallPopulation);
  const auto s = env->reset();
  ASSERT_EQ(s.size(), 7u);
  EXPECT_EQ(s[0], 0.0);
  EXPECT_EQ(env->last_info().at("time_ns"), static_cast<double>(clock_time(9, 35).nanos));
  const auto r = env->step(1);
  EXPECT_EQ(r.info.at("time_ns"), static_cast<double>(clock_time(9, 36).nanos));
  EXPECT_EQ(r.reward, 0.0);
  EXPECT_FALSE(r.done);
}

TEST(Environment, SeedDerivation) {
  auto a = envs::make_env(envs::kDailyInvestorName, nlohmann::json::object(), kSmallPopulation);
  auto b = envs::make_env(envs::kDailyInvestorName, nlohmann::json::object(), kSmallPopulation);
  a->seed(0);
  const auto a0 = a->reset();
  const auto k0 = a->kernel_seed();
  a->reset();
  const auto k1 = a->kernel_seed();
  EXPECT_NE(k0, k1);
  EXPECT_EQ(k0, hash64(0, 0));
  EXPECT_EQ(a->episode_index(), 1u);

  // No seed() call uses the default stream.
  EXPECT_EQ(b->reset(), a0);
  EXPECT_EQ(b->kernel_seed(), k0);

  b->seed(0, 1);
  b->reset();
  EXPECT_EQ(b->kernel_seed(), k1);
  EXPECT_EQ(b->episode_index(), 1u);
}

TEST(Environment, ResetIsRepeatableAndAbandonsEpisodes) {
  auto env = envs::make_env(envs::kDailyInvestorName, nlohmann::json::object(), kSmallPopulation);
  env->seed(4);
  const auto first = env->reset();
  for (int i = 0; i < 5; ++i) env->step(i % 3);
  env->seed(4);
  EXPECT_EQ(env->reset(), first);
  EXPECT_EQ(env->last_info().at("holdings"), 0.0);
}

TEST(Environment, TrajectoriesAreDeterministic) {
  auto trajectory = [] {
    auto env = envs::make_env(envs::kExecutionName, nlohmann::json::object(), kSmallPopulation);
    env->seed(9);
    std::vector<double> out = env->reset();
    for (int i = 0; i < 30; ++i) {
      const auto r = env->step(i % 3);
      out.insert(out.end(), r.state.begin(), r.state.end());
      out.push_back(r.reward);
    }
    return out;
  };
  EXPECT_EQ(trajectory(), trajectory());
}

TEST(Environment, StepAfterDoneIsUsageError) {
  auto env = envs::make_env(envs::kExecutionName,
                            {{"PARENT_ORDER_SIZE", 100}, {"CHILD_ORDER_SIZE", 50}}, kSmallPopulation);
  env->reset();
  StepResult r;
  int steps = 0;
  do {
    r = env->step(0);
    ++steps;
  } while (!r.done);
  EXPECT_EQ(steps, 2);
  EXPECT_FALSE(env->active());
  EXPECT_TRUE(env->last_run_log().has_value());
  EXPECT_THROW(env->step(0), UsageError);
}
