#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evsim/kernel/kernel.hpp"

namespace evsim::gym {

using Info = std::map<std::string, double, std::less<>>;

struct StepResult {
  std::vector<double> state;
  double reward{0.0};
  bool done{false};
  Info info;
};

/// Seed used when seed() is never called.
inline constexpr std::uint64_t kDefaultEnvSeed = 0;

/// Kernel-backed reset/step shell.
///
/// reset() builds a fresh kernel for the next episode and runs it to the first
/// interruption; step() injects an action and runs to the next one. Episode
/// kernel seeds are hash64(n, episode_index) where n comes from seed().
/// Subclasses supply the kernel, the action translation and the MDP maps.
class Environment {
 public:
  virtual ~Environment() = default;

  std::vector<double> reset();
  StepResult step(int action);
  /// Restarts the episode counter; the next reset() is episode `first_episode`
  /// of stream n.
  void seed(std::uint64_t n, std::uint64_t first_episode = 0);

  virtual std::string name() const = 0;
  virtual int action_count() const = 0;
  virtual std::size_t state_size() const = 0;

  bool active() const { return kernel_ != nullptr && !done_; }
  std::uint64_t stream_seed() const { return stream_seed_; }
  /// Index of the current (or last) episode within the seed stream.
  std::uint64_t episode_index() const { return current_episode_; }
  std::uint64_t kernel_seed() const { return kernel_seed_; }
  /// Raw state behind the most recent reset() or step().
  const RawState& last_raw() const { return last_raw_; }
  /// Diagnostics of the most recent reset() or step().
  const Info& last_info() const { return last_info_; }
  /// Run log of the last finished episode.
  const std::optional<RunLog>& last_run_log() const { return last_run_log_; }

 protected:
  /// Kernel for one episode; must designate an interrupting agent.
  virtual KernelConfig make_kernel_config(std::uint64_t kernel_seed) = 0;
  virtual void begin_episode(const RawState& first) = 0;
  virtual ActionBundle translate_action(int action, const RawState& current) = 0;
  virtual std::vector<double> state_of(const RawState& raw) const = 0;
  virtual double step_reward(const RawState& previous, const RawState& current) = 0;
  virtual bool episode_done(const RawState& raw) const = 0;
  virtual double final_update(const RawState&) { return 0.0; }
  virtual void describe(const RawState&, Info&) const {}

 private:
  void finish_kernel();

  std::unique_ptr<Kernel> kernel_;
  std::uint64_t stream_seed_{kDefaultEnvSeed};
  std::uint64_t episode_index_{0};
  std::uint64_t current_episode_{0};
  std::uint64_t kernel_seed_{0};
  bool done_{false};
  RawState last_raw_;
  Info last_info_;
  std::optional<RunLog> last_run_log_;
};

}  // namespace evsim::gym
