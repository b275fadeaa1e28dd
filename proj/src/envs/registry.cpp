#include "evsim/envs/registry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace evsim::envs {

using nlohmann::json;

namespace {

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

void reject_unknown_keys(const json& j, const std::set<std::string, std::less<>>& known, std::string_view what) {
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown " + std::string(what) + " key '" + key + "'");
}

std::int64_t positive_integer(const json& j, std::string_view key) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0)
    throw ConfigError(std::string(key) + " must be a positive integer");
  return j.get<std::int64_t>();
}

std::int64_t non_negative_integer(const json& j, std::string_view key) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw ConfigError(std::string(key) + " must be a non-negative integer");
  return j.get<std::int64_t>();
}

double number(const json& j, std::string_view key) {
  if (!j.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return j.get<double>();
}

Duration seconds_to_duration(double s, std::string_view key) {
  if (!std::isfinite(s) || s <= 0.0) throw ConfigError(std::string(key) + " must be a positive duration");
  return Duration{std::llround(s * 1e9)};
}

}  // namespace

Duration parse_duration(const json& value, std::string_view key) {
  if (value.is_number()) return seconds_to_duration(value.get<double>(), key);
  if (!value.is_object())
    throw ConfigError(std::string(key) + " must be a number of seconds or an object like {\"seconds\": 60}");
  static const std::pair<const char*, double> kUnits[] = {
      {"hours", 3600.0}, {"minutes", 60.0}, {"seconds", 1.0}, {"milliseconds", 1e-3}};
  double total = 0.0;
  for (const auto& [unit, amount] : value.items()) {
    const auto* found = std::find_if(std::begin(kUnits), std::end(kUnits),
                                     [&](const auto& u) { return unit == u.first; });
    if (found == std::end(kUnits)) throw ConfigError("unknown time unit '" + unit + "' in " + std::string(key));
    total += number(amount, key) * found->second;
  }
  return seconds_to_duration(total, key);
}

market::MarketSetup market_setup_from_json(const json& population) {
  require_object(population, "population");
  reject_unknown_keys(population,
                      {"noise_count", "value_count", "momentum_count", "noise_wake_mean", "value_wake_mean",
                       "momentum_wake_mean", "noise_min_qty", "noise_max_qty", "value_min_qty", "value_max_qty",
                       "value_obs_noise", "momentum_short_window", "momentum_long_window", "momentum_order_size",
                       "fundamental_mean", "fundamental_kappa", "fundamental_sigma", "seed_book"},
                      "population");
  market::MarketSetup setup;
  auto& pop = setup.population;
  for (const auto& [key, v] : population.items()) {
    if (key == "noise_count") pop.noise_count = static_cast<int>(non_negative_integer(v, key));
    else if (key == "value_count") pop.value_count = static_cast<int>(non_negative_integer(v, key));
    else if (key == "momentum_count") pop.momentum_count = static_cast<int>(non_negative_integer(v, key));
    else if (key == "noise_wake_mean") pop.noise.wake_mean = parse_duration(v, key);
    else if (key == "value_wake_mean") pop.value.wake_mean = parse_duration(v, key);
    else if (key == "momentum_wake_mean") pop.momentum.wake_mean = parse_duration(v, key);
    else if (key == "noise_min_qty") pop.noise.min_qty = positive_integer(v, key);
    else if (key == "noise_max_qty") pop.noise.max_qty = positive_integer(v, key);
    else if (key == "value_min_qty") pop.value.min_qty = positive_integer(v, key);
    else if (key == "value_max_qty") pop.value.max_qty = positive_integer(v, key);
    else if (key == "value_obs_noise") pop.value.obs_noise = number(v, key);
    else if (key == "momentum_short_window") pop.momentum.short_window = static_cast<int>(positive_integer(v, key));
    else if (key == "momentum_long_window") pop.momentum.long_window = static_cast<int>(positive_integer(v, key));
    else if (key == "momentum_order_size") pop.momentum.order_size = positive_integer(v, key);
    else if (key == "fundamental_mean") {
      pop.fundamental.mean = positive_integer(v, key);
      pop.fundamental.initial = pop.fundamental.mean;
      setup.exchange.seed.center = pop.fundamental.mean;
    } else if (key == "fundamental_kappa") pop.fundamental.kappa = number(v, key);
    else if (key == "fundamental_sigma") pop.fundamental.sigma = number(v, key);
    else if (key == "seed_book") {
      if (!v.is_boolean()) throw ConfigError("seed_book must be true or false");
      setup.exchange.seed.enabled = v.get<bool>();
    }
  }
  return setup;
}

DailyInvestorConfig daily_investor_config(const json& env_config, const json& population) {
  require_object(env_config, "env_config");
  reject_unknown_keys(env_config, {"ORDER_FIXED_SIZE", "TIMESTEP_DURATION"}, "markets-daily_investor-v0 env_config");
  DailyInvestorConfig c;
  c.market = market_setup_from_json(population);
  if (env_config.contains("ORDER_FIXED_SIZE"))
    c.order_fixed_size = positive_integer(env_config["ORDER_FIXED_SIZE"], "ORDER_FIXED_SIZE");
  if (env_config.contains("TIMESTEP_DURATION"))
    c.timestep = parse_duration(env_config["TIMESTEP_DURATION"], "TIMESTEP_DURATION");
  return c;
}

ExecutionConfig execution_config(const json& env_config, const json& population) {
  require_object(env_config, "env_config");
  reject_unknown_keys(env_config,
                      {"PARENT_ORDER_SIZE", "DIRECTION", "TIME_WINDOW", "CHILD_ORDER_SIZE", "PENALTY",
                       "TIMESTEP_DURATION"},
                      "markets-execution-v0 env_config");
  ExecutionConfig c;
  c.market = market_setup_from_json(population);
  if (env_config.contains("PARENT_ORDER_SIZE"))
    c.parent_order_size = positive_integer(env_config["PARENT_ORDER_SIZE"], "PARENT_ORDER_SIZE");
  if (env_config.contains("CHILD_ORDER_SIZE"))
    c.child_order_size = positive_integer(env_config["CHILD_ORDER_SIZE"], "CHILD_ORDER_SIZE");
  if (env_config.contains("TIME_WINDOW")) c.time_window = parse_duration(env_config["TIME_WINDOW"], "TIME_WINDOW");
  if (env_config.contains("TIMESTEP_DURATION"))
    c.timestep = parse_duration(env_config["TIMESTEP_DURATION"], "TIMESTEP_DURATION");
  if (env_config.contains("PENALTY")) c.penalty = number(env_config["PENALTY"], "PENALTY");
  if (env_config.contains("DIRECTION")) {
    const auto& d = env_config["DIRECTION"];
    if (!d.is_string()) throw ConfigError("DIRECTION must be \"buy\" or \"sell\"");
    std::string s = d.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "buy") c.direction = market::Side::Buy;
    else if (s == "sell") c.direction = market::Side::Sell;
    else throw ConfigError("DIRECTION must be \"buy\" or \"sell\", got \"" + d.get<std::string>() + "\"");
  }
  return c;
}

std::unique_ptr<gym::Environment> make_env(std::string_view name, const json& env_config, const json& population) {
  if (name == kDailyInvestorName) return std::make_unique<DailyInvestor>(daily_investor_config(env_config, population));
  if (name == kExecutionName) return std::make_unique<Execution>(execution_config(env_config, population));
  throw ConfigError("unknown environment '" + std::string(name) + "'");
}

std::vector<std::string> registered_env_names() { return {kDailyInvestorName, kExecutionName}; }

}  // namespace evsim::envs
