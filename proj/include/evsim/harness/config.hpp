#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "evsim/harness/q_learner.hpp"

namespace evsim::harness {

enum class PolicyKind { Random, Fixed, QLearning };

struct PolicySpec {
  PolicyKind kind{PolicyKind::Random};
  /// Fixed policies only.
  int action{0};
  /// QLearning only; empty bins mean default_bins(env).
  QLearnerSpec q;
};

/// A run or training job, usually read from a JSON file:
///
///   {
///     "env": "markets-daily_investor-v0",
///     "env_config": {"ORDER_FIXED_SIZE": 100, "TIMESTEP_DURATION": {"seconds": 60}},
///     "population": {"noise_count": 100},
///     "seeds": [1, 2, 3],
///     "episodes": 300,
///     "policy": {"type": "q-learning", "epsilon_end": 0.02},
///     "output_dir": "runs/daily"
///   }
struct RunConfig {
  std::string env;
  nlohmann::json env_config = nlohmann::json::object();
  nlohmann::json population = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  int episodes{1};
  PolicySpec policy;
  std::string output_dir{"runs"};
};

/// Parse errors name the source and the line/column; field errors name the field.
/// The env name and env_config keys are checked against the registry.
RunConfig parse_run_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

/// Fully resolved config (defaults filled in) as JSON; stable key order.
nlohmann::json to_json(const RunConfig& config);
/// FNV-1a over the compact dump of to_json(config) without output_dir.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace evsim::harness
