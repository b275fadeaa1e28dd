#pragma once

#include <vector>

#include "evsim/harness/config.hpp"
#include "evsim/harness/episode_runner.hpp"

namespace evsim::harness {

/// Runs every seed x episode of `config`; logs come back seed-major.
///
/// Non-learning policies make each (seed, episode) an independent job: a
/// private env seeded at that episode and a policy RNG from policy_seed().
/// Learning policies keep one learner per seed, so a seed is one job.
std::vector<EpisodeLog> run_batch_serial(const RunConfig& config, bool record_steps = true);

/// Same jobs over an OpenMP loop; output is identical to run_batch_serial.
std::vector<EpisodeLog> run_batch_parallel(const RunConfig& config, bool record_steps = true);

/// The jobs' shared body, exposed for the learning path.
std::vector<EpisodeLog> run_seed(const RunConfig& config, std::uint64_t seed, Policy& policy, bool record_steps);
EpisodeLog run_single(const RunConfig& config, std::uint64_t seed, int episode, bool record_steps);

}  // namespace evsim::harness
