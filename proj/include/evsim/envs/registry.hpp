#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "evsim/envs/daily_investor.hpp"
#include "evsim/envs/execution.hpp"

namespace evsim::envs {

/// Durations in env_config: a number of seconds, or an object with any of
/// "hours", "minutes", "seconds", "milliseconds" that are summed.
Duration parse_duration(const nlohmann::json& value, std::string_view key);

/// Background market overrides. Keys: noise_count, value_count,
/// momentum_count, noise_wake_mean, value_wake_mean, momentum_wake_mean,
/// noise_min_qty, noise_max_qty, value_min_qty, value_max_qty, value_obs_noise,
/// momentum_short_window, momentum_long_window, momentum_order_size,
/// fundamental_mean, fundamental_kappa, fundamental_sigma, seed_book.
market::MarketSetup market_setup_from_json(const nlohmann::json& population);

/// Keys: ORDER_FIXED_SIZE, TIMESTEP_DURATION.
DailyInvestorConfig daily_investor_config(const nlohmann::json& env_config,
                                          const nlohmann::json& population = nlohmann::json::object());
/// Keys: PARENT_ORDER_SIZE, DIRECTION ("buy"/"sell"), TIME_WINDOW,
/// CHILD_ORDER_SIZE, PENALTY, TIMESTEP_DURATION.
ExecutionConfig execution_config(const nlohmann::json& env_config,
                                 const nlohmann::json& population = nlohmann::json::object());

/// Unknown names and unknown keys throw ConfigError.
std::unique_ptr<gym::Environment> make_env(std::string_view name,
                                           const nlohmann::json& env_config = nlohmann::json::object(),
                                           const nlohmann::json& population = nlohmann::json::object());

std::vector<std::string> registered_env_names();

}  // namespace evsim::envs
