#include "evsim/harness/episode_runner.hpp"

#include "evsim/gym/markets_gym_agent.hpp"
#include "evsim/kernel/ids.hpp"
#include "evsim/market/trade_tape.hpp"

namespace evsim::harness {

namespace {

constexpr std::uint64_t kPolicyStream = 0x706f6c6963790000ULL;

}  // namespace

std::uint64_t policy_seed(std::uint64_t seed, std::uint64_t episode) {
  return hash64(hash64(seed, kPolicyStream), episode);
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const std::string& env_name, int action_count) {
  switch (spec.kind) {
    case PolicyKind::Random: return std::make_unique<RandomPolicy>(action_count);
    case PolicyKind::Fixed:
      if (spec.action < 0 || spec.action >= action_count) throw ConfigError("fixed action outside the action space");
      return std::make_unique<FixedPolicy>(spec.action);
    case PolicyKind::QLearning: {
      QLearnerSpec q = spec.q;
      if (q.bins.empty()) q.bins = default_bins(env_name);
      return std::make_unique<TabularQLearner>(std::move(q), action_count);
    }
  }
  throw ConfigError("unknown policy kind");
}

EpisodeLog run_episode(gym::Environment& env, Policy& policy, std::mt19937_64& rng, int episode, int total_episodes,
                       bool record_steps) {
  EpisodeLog log;
  log.env = env.name();
  log.seed = env.stream_seed();

  policy.begin_episode(episode, total_episodes);
  std::vector<double> state = env.reset();
  log.episode = env.episode_index();
  log.kernel_seed = env.kernel_seed();

  bool done = false;
  while (!done) {
    const std::int64_t t = env.last_raw().integer(gym::raw_keys::kNow);
    const int action = policy.act(state, rng);
    gym::StepResult r = env.step(action);
    policy.observe(Transition{state, action, r.reward, r.state, r.done});
    log.total_return += r.reward;
    ++log.step_count;
    if (record_steps) log.steps.push_back(StepRecord{t, state, action, r.reward, r.done});
    state = std::move(r.state);
    done = r.done;
  }
  log.final_info = env.last_info();
  if (const auto& run_log = env.last_run_log()) {
    const auto tape = market::trade_tape(*run_log);
    log.trade_count = tape.size();
    log.tape_digest = market::tape_digest(tape);
  }
  return log;
}

}  // namespace evsim::harness
