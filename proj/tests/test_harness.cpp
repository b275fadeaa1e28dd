#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "evsim/envs/registry.hpp"
#include "evsim/harness/batch_runner.hpp"
#include "evsim/harness/logs.hpp"
#include "evsim/harness/training.hpp"

using namespace evsim;
using namespace evsim::harness;
namespace fs = std::filesystem;

namespace {

// Execution with a small parent and a thin market: episodes finish in a few dozen steps.
const char* kFastConfig = R"({
  "env": "markets-execution-v0",
  "env_config": {"PARENT_ORDER_SIZE": 300, "CHILD_ORDER_SIZE": 50},
  "population": {"noise_count": 10, "value_count": 2, "momentum_count": 0},
  "seeds": [1, 2, 3],
  "episodes": 2,
  "policy": {"type": "random"}
})";

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("evsim_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string expect_config_error(const std::string& text) {
  try {
    parse_run_config(text, "cfg.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no ConfigError for " << text;
  return {};
}

}  // namespace

TEST(Config, ParsesAndResolvesDefaults) {
  const auto c = parse_run_config(kFastConfig);
  EXPECT_EQ(c.env, "markets-execution-v0");
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(c.episodes, 2);
  EXPECT_EQ(c.policy.kind, PolicyKind::Random);

  const auto q = parse_run_config(R"({"env": "markets-daily_investor-v0", "seeds": [1],
                                      "policy": {"type": "q-learning"}})");
  EXPECT_EQ(q.policy.q.bins.size(), 7u);
  EXPECT_EQ(to_json(q)["policy"]["bins"].size(), 7u);
}

TEST(Config, ErrorsNameTheLocationOrField) {
  EXPECT_NE(expect_config_error("{\n  \"env\": \"x\",,\n}").find("line 2"), std::string::npos);
  EXPECT_NE(expect_config_error(R"({"env": "markets-nope-v0", "seeds": [1]})").find("'env'"), std::string::npos);
  EXPECT_NE(expect_config_error(R"({"env": "markets-daily_investor-v0", "seeds": [1], "colour": 1})").find("colour"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"env": "markets-daily_investor-v0", "seeds": []})").find("'seeds'"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"env": "markets-daily_investor-v0", "seeds": [1], "episodes": 0})")
                .find("'episodes'"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"env": "markets-daily_investor-v0", "seeds": [1],
                                    "env_config": {"PENALTY": 3}})")
                .find("'env_config'"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"env": "markets-daily_investor-v0", "seeds": [1],
                                    "policy": {"type": "q-learning", "bins": [[0, 1, 2]]}})")
                .find("policy.bins"),
            std::string::npos);
}

TEST(Config, TooManyTabularStatesIsAnError) {
  const auto msg = expect_config_error(R"({"env": "markets-daily_investor-v0", "seeds": [1],
    "policy": {"type": "q-learning", "bins": [[0,1,10],[0,1,10],[0,1,10],[0,1,10],[0,1,10],[0,1,10],[0,1,2]]}})");
  EXPECT_NE(msg.find("states"), std::string::npos);
  EXPECT_THROW(StateDiscretizer({{0, 1, 1001}, {0, 1, 1000}}), ConfigError);
}

TEST(Config, HashIgnoresOutputDirOnly) {
  auto a = parse_run_config(kFastConfig);
  auto b = a;
  b.output_dir = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.episodes = 3;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Discretizer, ClampsAndIgnoresSingleBins) {
  StateDiscretizer d({{0.0, 1.0, 4}, {-1.0, 1.0, 1}, {0.0, 10.0, 2}});
  EXPECT_EQ(d.state_count(), 8u);
  EXPECT_EQ(d.index({0.0, 5.0, 0.0}), 0u);
  EXPECT_EQ(d.index({-3.0, -5.0, 99.0}), 1u);
  EXPECT_EQ(d.index({0.99, 0.0, 7.0}), 7u);
  EXPECT_EQ(d.index({0.3, 0.0, 1.0}), 2u);
  EXPECT_THROW(d.index({0.0}), UsageError);
}

TEST(QLearner, UpdateRuleAndTies) {
  QLearnerSpec spec;
  spec.bins = {{0.0, 2.0, 2}};
  spec.alpha_start = spec.alpha_end = 0.5;
  spec.gamma = 1.0;
  TabularQLearner q(spec, 3);
  q.begin_episode(0, 1);
  EXPECT_EQ(q.greedy_action(0), 0);
  const std::vector<double> s0{0.5}, s1{1.5};
  q.observe({s0, 2, 4.0, s1, false});
  EXPECT_EQ(q.q_values()[2], 2.0);
  EXPECT_EQ(q.greedy_action(0), 2);
  q.observe({s1, 1, 6.0, s0, true});
  EXPECT_EQ(q.q_values()[3 + 1], 3.0);  // terminal: no bootstrap
  q.observe({s0, 0, 0.0, s1, false});
  EXPECT_EQ(q.q_values()[0], 1.5);  // 0.5 * (0 + 3)
}

TEST(QLearner, EpsilonDecaysMonotonically) {
  QLearnerSpec spec;
  spec.bins = {{0.0, 1.0, 1}};
  TabularQLearner q(spec, 3);
  double previous = 2.0;
  for (int e = 0; e < 100; ++e) {
    q.begin_episode(e, 100);
    EXPECT_LE(q.epsilon(), previous);
    previous = q.epsilon();
  }
  q.begin_episode(0, 100);
  EXPECT_EQ(q.epsilon(), 1.0);
  q.begin_episode(99, 100);
  EXPECT_DOUBLE_EQ(q.epsilon(), 0.02);
}

TEST(QLearner, ZeroLearningRateLeavesTableUnchanged) {
  auto config = parse_run_config(kFastConfig);
  config.seeds = {1};
  config.policy.kind = PolicyKind::QLearning;
  config.policy.q.bins = default_bins(config.env);
  config.policy.q.alpha_start = config.policy.q.alpha_end = 0.0;
  const auto out = train(config);
  const auto& q = out.at(0).learner->q_values();
  EXPECT_TRUE(std::all_of(q.begin(), q.end(), [](double v) { return v == 0.0; }));
  const auto& visits = out[0].learner->visits();
  EXPECT_GT(std::accumulate(visits.begin(), visits.end(), 0u), 0u);
}

TEST(Runner, SerialAndParallelAgree) {
  const auto config = parse_run_config(kFastConfig);
  const auto a = run_batch_serial(config);
  const auto b = run_batch_parallel(config);
  ASSERT_EQ(a.size(), 6u);
  ASSERT_EQ(b.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(episode_jsonl(a[i]), episode_jsonl(b[i]));
  EXPECT_EQ(a[3].seed, 2u);
  EXPECT_EQ(a[3].episode, 1u);
}

TEST(Runner, LearningBatchesAgreeToo) {
  auto config = parse_run_config(kFastConfig);
  config.policy.kind = PolicyKind::QLearning;
  config.policy.q.bins = default_bins(config.env);
  const auto a = run_batch_serial(config);
  const auto b = run_batch_parallel(config);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(episode_jsonl(a[i]), episode_jsonl(b[i]));
}

TEST(Runner, ReturnIsTheSumOfStepRewards) {
  const auto config = parse_run_config(kFastConfig);
  const auto log = run_single(config, 5, 0, true);
  double total = 0;
  for (const auto& s : log.steps) total += s.reward;
  EXPECT_EQ(total, log.total_return);
  EXPECT_EQ(log.step_count, log.steps.size());
  EXPECT_TRUE(log.steps.back().done);
}

TEST(Logs, FilesManifestAndOverwrite) {
  const auto config = parse_run_config(kFastConfig);
  const auto logs = run_batch_serial(config);
  const auto dir = fresh_dir("logs");
  const auto written = write_logs(logs, config, dir, false);
  EXPECT_EQ(written.episode_files.size(), 6u);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file() ? 1 : 0;
  EXPECT_EQ(files, 7u);
  EXPECT_TRUE(fs::exists(dir / "seed3_episode1.jsonl"));

  nlohmann::json manifest;
  std::ifstream(dir / "manifest.json") >> manifest;
  EXPECT_EQ(manifest["version"], kVersion);
  EXPECT_EQ(manifest["config_hash"], hex64(config_hash(config)));
  EXPECT_EQ(manifest["files"].size(), 6u);

  EXPECT_THROW(write_logs(logs, config, dir, false), std::runtime_error);
  EXPECT_NO_THROW(write_logs(logs, config, dir, true));

  const auto replayed = read_episode_log(dir / "seed1_episode0.jsonl");
  double total = 0;
  for (const auto& r : replayed.rows) total += r.reward;
  EXPECT_EQ(total, replayed.summary["return"].get<double>());
  fs::remove_all(dir);
}

TEST(Logs, UnwritablePathIsAnError) {
  const auto config = parse_run_config(kFastConfig);
  EXPECT_THROW(write_logs({}, config, "/proc/evsim_cannot_write_here", false), std::runtime_error);
}

TEST(Stats, SummaryAndWelch) {
  const std::vector<double> v{1, 2, 3, 4};
  const auto s = summarize(v);
  EXPECT_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.sd, 1.2909944, 1e-6);
  EXPECT_NEAR(s.se, 0.6454972, 1e-6);
  EXPECT_NEAR(welch_se(s, s), s.se * std::sqrt(2.0), 1e-12);
}
