#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evsim/gym/environment.hpp"
#include "evsim/harness/config.hpp"
#include "evsim/harness/policy.hpp"

namespace evsim::harness {

struct StepRecord {
  /// Time of the state the action was chosen in.
  std::int64_t time_ns{0};
  std::vector<double> state;
  int action{0};
  double reward{0.0};
  bool done{false};
};

struct EpisodeLog {
  std::string env;
  std::uint64_t seed{0};
  std::uint64_t episode{0};
  std::uint64_t kernel_seed{0};
  std::vector<StepRecord> steps;
  double total_return{0.0};
  std::size_t step_count{0};
  std::size_t trade_count{0};
  std::uint64_t tape_digest{0};
  gym::Info final_info;
};

/// Runs one episode (reset, then step until done) and records every step.
/// The policy's begin_episode/observe hooks are driven here.
EpisodeLog run_episode(gym::Environment& env, Policy& policy, std::mt19937_64& rng, int episode, int total_episodes,
                       bool record_steps = true);

/// Policy RNG stream for one (seed, episode).
std::uint64_t policy_seed(std::uint64_t seed, std::uint64_t episode);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const std::string& env_name, int action_count);

}  // namespace evsim::harness
