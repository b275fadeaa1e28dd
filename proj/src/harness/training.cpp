#include "evsim/harness/training.hpp"

#include <cmath>
#include <exception>
#include <numeric>

#include "evsim/envs/registry.hpp"

namespace evsim::harness {

SampleStats summarize(std::span<const double> values) {
  SampleStats s;
  s.n = values.size();
  if (s.n == 0) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  s.se = s.sd / std::sqrt(static_cast<double>(s.n));
  return s;
}

double welch_se(const SampleStats& a, const SampleStats& b) { return std::sqrt(a.se * a.se + b.se * b.se); }

std::vector<double> returns_of(std::span<const EpisodeLog> logs) {
  std::vector<double> out;
  out.reserve(logs.size());
  for (const auto& l : logs) out.push_back(l.total_return);
  return out;
}

namespace {

SeedTraining train_seed(const RunConfig& config, std::uint64_t seed, bool record_steps) {
  auto env = envs::make_env(config.env, config.env_config, config.population);
  auto policy = make_policy(config.policy, config.env, env->action_count());
  SeedTraining out;
  out.seed = seed;
  out.learner.reset(static_cast<TabularQLearner*>(policy.release()));

  env->seed(seed);
  for (int e = 0; e < config.episodes; ++e) {
    std::mt19937_64 rng(policy_seed(seed, static_cast<std::uint64_t>(e)));
    auto log = run_episode(*env, *out.learner, rng, e, config.episodes, record_steps);
    out.returns.push_back(log.total_return);
    out.epsilons.push_back(out.learner->epsilon());
    out.logs.push_back(std::move(log));
  }
  return out;
}

}  // namespace

std::vector<SeedTraining> train(const RunConfig& config, bool record_steps, bool parallel) {
  if (config.policy.kind != PolicyKind::QLearning) throw ConfigError("training needs a q-learning policy");
  const auto n = static_cast<std::ptrdiff_t>(config.seeds.size());
  std::vector<SeedTraining> out(static_cast<std::size_t>(n));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = train_seed(config, config.seeds[static_cast<std::size_t>(i)], record_steps);
    } catch (...) {
#pragma omp critical(evsim_train_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

nlohmann::json greedy_table(const TabularQLearner& learner) {
  const auto& d = learner.discretizer();
  const auto& bins = learner.spec().bins;
  const int actions = learner.action_count();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t s = 0; s < d.state_count(); ++s) {
    std::uint64_t visits = 0;
    for (int a = 0; a < actions; ++a) visits += learner.visits()[s * static_cast<std::size_t>(actions) + a];
    if (visits == 0) continue;

    std::vector<int> coords(bins.size(), 0);
    std::size_t rest = s;
    for (std::size_t i = bins.size(); i-- > 0;) {
      coords[i] = static_cast<int>(rest % static_cast<std::size_t>(bins[i].bins));
      rest /= static_cast<std::size_t>(bins[i].bins);
    }
    std::vector<double> q(learner.q_values().begin() + static_cast<std::ptrdiff_t>(s * actions),
                          learner.q_values().begin() + static_cast<std::ptrdiff_t>((s + 1) * actions));
    rows.push_back({{"state", s},
                    {"bins", coords},
                    {"action", learner.greedy_action(s)},
                    {"q", q},
                    {"visits", visits}});
  }
  return rows;
}

}  // namespace evsim::harness
