#include "evsim/harness/batch_runner.hpp"

#include <exception>

#include "evsim/envs/registry.hpp"

namespace evsim::harness {

namespace {

bool learns(const RunConfig& c) { return c.policy.kind == PolicyKind::QLearning; }

}  // namespace

EpisodeLog run_single(const RunConfig& config, std::uint64_t seed, int episode, bool record_steps) {
  auto env = envs::make_env(config.env, config.env_config, config.population);
  auto policy = make_policy(config.policy, config.env, env->action_count());
  env->seed(seed, static_cast<std::uint64_t>(episode));
  std::mt19937_64 rng(policy_seed(seed, static_cast<std::uint64_t>(episode)));
  return run_episode(*env, *policy, rng, episode, config.episodes, record_steps);
}

std::vector<EpisodeLog> run_seed(const RunConfig& config, std::uint64_t seed, Policy& policy, bool record_steps) {
  auto env = envs::make_env(config.env, config.env_config, config.population);
  env->seed(seed);
  std::vector<EpisodeLog> logs;
  logs.reserve(static_cast<std::size_t>(config.episodes));
  for (int e = 0; e < config.episodes; ++e) {
    std::mt19937_64 rng(policy_seed(seed, static_cast<std::uint64_t>(e)));
    logs.push_back(run_episode(*env, policy, rng, e, config.episodes, record_steps));
  }
  return logs;
}

std::vector<EpisodeLog> run_batch_serial(const RunConfig& config, bool record_steps) {
  std::vector<EpisodeLog> out;
  for (const auto seed : config.seeds) {
    if (learns(config)) {
      auto env = envs::make_env(config.env, config.env_config, config.population);
      auto policy = make_policy(config.policy, config.env, env->action_count());
      auto logs = run_seed(config, seed, *policy, record_steps);
      out.insert(out.end(), std::make_move_iterator(logs.begin()), std::make_move_iterator(logs.end()));
    } else {
      for (int e = 0; e < config.episodes; ++e) out.push_back(run_single(config, seed, e, record_steps));
    }
  }
  return out;
}

std::vector<EpisodeLog> run_batch_parallel(const RunConfig& config, bool record_steps) {
  const auto n_seeds = static_cast<std::ptrdiff_t>(config.seeds.size());
  const auto n_episodes = static_cast<std::ptrdiff_t>(config.episodes);
  std::vector<EpisodeLog> out(static_cast<std::size_t>(n_seeds * n_episodes));
  std::exception_ptr failure;

  if (learns(config)) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t s = 0; s < n_seeds; ++s) {
      try {
        auto env = envs::make_env(config.env, config.env_config, config.population);
        auto policy = make_policy(config.policy, config.env, env->action_count());
        auto logs = run_seed(config, config.seeds[static_cast<std::size_t>(s)], *policy, record_steps);
        for (std::ptrdiff_t e = 0; e < n_episodes; ++e)
          out[static_cast<std::size_t>(s * n_episodes + e)] = std::move(logs[static_cast<std::size_t>(e)]);
      } catch (...) {
#pragma omp critical(evsim_batch_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    const std::ptrdiff_t jobs = n_seeds * n_episodes;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < jobs; ++j) {
      try {
        out[static_cast<std::size_t>(j)] = run_single(config, config.seeds[static_cast<std::size_t>(j / n_episodes)],
                                                      static_cast<int>(j % n_episodes), record_steps);
      } catch (...) {
#pragma omp critical(evsim_batch_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace evsim::harness
