#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "evsim/kernel/sim_time.hpp"
#include "evsim/market/types.hpp"

namespace evsim::market {

struct FundamentalConfig {
  Price mean{10'000};
  Price initial{10'000};
  /// Mean-reversion rate per step, in (0, 1].
  double kappa{1.67e-4};
  /// Shock standard deviation per step, cents.
  double sigma{5.0};
  Duration step{std::chrono::seconds(1)};
};

/// Discrete Ornstein-Uhlenbeck value on a fixed time grid, generated lazily:
///   r_j = r_{j-1} + kappa * (mean - r_{j-1}) + sigma * N(0, 1),  r_j >= 1.
class FundamentalProcess {
 public:
  FundamentalProcess(FundamentalConfig config, SimTime origin, std::uint64_t seed);

  /// Value at the last grid point not after t, rounded to cents.
  Price at(SimTime t);
  const FundamentalConfig& config() const { return config_; }

 private:
  FundamentalConfig config_;
  SimTime origin_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> shock_{0.0, 1.0};
  std::vector<double> path_;
};

}  // namespace evsim::market
