#include "evsim/market/fundamental.hpp"

#include <algorithm>
#include <cmath>

#include "evsim/kernel/errors.hpp"

namespace evsim::market {

FundamentalProcess::FundamentalProcess(FundamentalConfig config, SimTime origin, std::uint64_t seed)
    : config_(config), origin_(origin), rng_(seed) {
  if (!(config_.kappa > 0.0 && config_.kappa <= 1.0)) throw ConfigError("fundamental kappa must lie in (0, 1]");
  if (config_.sigma < 0.0) throw ConfigError("fundamental sigma must be non-negative");
  if (config_.step <= Duration::zero()) throw ConfigError("fundamental step must be positive");
  if (config_.mean < 1 || config_.initial < 1) throw ConfigError("fundamental values must be at least one cent");
  path_.push_back(static_cast<double>(config_.initial));
}

Price FundamentalProcess::at(SimTime t) {
  const std::int64_t j = t < origin_ ? 0 : (t - origin_) / config_.step;
  const double mean = static_cast<double>(config_.mean);
  while (static_cast<std::int64_t>(path_.size()) <= j) {
    const double prev = path_.back();
    double next = prev + config_.kappa * (mean - prev);
    if (config_.sigma > 0.0) next += config_.sigma * shock_(rng_);
    path_.push_back(std::max(next, 1.0));
  }
  return std::max<Price>(1, std::llround(path_[static_cast<std::size_t>(j)]));
}

}  // namespace evsim::market
