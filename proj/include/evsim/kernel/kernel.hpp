#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <type_traits>
#include <vector>

#include "evsim/kernel/agent.hpp"
#include "evsim/kernel/errors.hpp"
#include "evsim/kernel/message.hpp"
#include "evsim/kernel/raw_state.hpp"
#include "evsim/kernel/run_log.hpp"
#include "evsim/kernel/sim_time.hpp"

namespace evsim {

/// Message latency: deterministic base per (sender, recipient) plus uniform jitter.
/// Wakeups bypass latency.
struct LatencySpec {
  Duration base{0};
  /// Optional row-major agent_count x agent_count override of `base`.
  std::vector<Duration> pair_base;
  Duration jitter_max{0};

  Duration base_between(AgentId sender, AgentId recipient, std::size_t agent_count) const;
};

struct KernelConfig {
  SimTime start_time;
  SimTime end_time;
  std::uint64_t seed{0};
  LatencySpec latency;
  std::vector<std::unique_ptr<Agent>> agents;
  /// Agent that receives injected actions and whose raw state is returned.
  std::optional<AgentId> interrupting_agent;
};

enum class RunStatus : std::uint8_t { Interrupted, Done };

struct RunResult {
  RunStatus status{RunStatus::Done};
  /// Interrupted: the interrupting agent's raw state. Done: that agent's last
  /// known raw state, when an interrupting agent is configured.
  std::optional<RawState> raw_state;
};

/// Discrete-event driver. Owns the clock, the message queue and the agents.
///
/// Construction runs the initialize and starting hooks; run() processes the
/// queue until an agent interrupts or the simulation ends; terminate() runs
/// the stopping and terminating hooks. Not thread-safe; one kernel per thread.
class Kernel {
 public:
  /// Throws ConfigError on an empty roster, start >= end or a bad interrupting agent.
  explicit Kernel(KernelConfig config);

  Kernel(const Kernel&) = delete;
  Kernel& operator=(const Kernel&) = delete;

  RunResult run(std::optional<ActionBundle> injected_action = std::nullopt);
  RunLog terminate();

  /// Routes a data message; deliver_at = sent_at + base + U[0, jitter_max].
  void send(AgentId sender, AgentId recipient, std::shared_ptr<const MessageBody> body);
  void schedule_wakeup(AgentId agent, SimTime at);
  /// Requests a pause once the current delivery completes.
  void interrupt(AgentId agent, RawState raw_state);

  SimTime now() const { return now_; }
  SimTime start_time() const { return start_; }
  SimTime end_time() const { return end_; }
  std::uint64_t seed() const { return seed_; }

  bool done() const { return done_; }
  bool terminated() const { return terminated_; }

  std::size_t agent_count() const { return agents_.size(); }
  Agent& agent(AgentId id);
  const Agent& agent(AgentId id) const;

  template <class T>
  T& agent_as(AgentId id) {
    static_assert(std::is_base_of_v<Agent, T>);
    auto* p = dynamic_cast<T*>(&agent(id));
    if (p == nullptr) throw std::bad_cast{};
    return *p;
  }

  std::size_t queue_size() const { return queue_.size(); }
  /// Pending entries in delivery order.
  std::vector<QueueEntry> pending() const;
  std::uint64_t delivered_count() const { return delivered_; }
  std::uint64_t routed_count() const { return next_seq_; }

 private:
  void enqueue(Message message);
  void deliver(const Message& message);

  SimTime start_;
  SimTime end_;
  SimTime now_;
  std::uint64_t seed_;
  LatencySpec latency_;
  std::vector<std::unique_ptr<Agent>> agents_;
  std::optional<AgentId> interrupting_;
  std::mt19937_64 jitter_rng_;

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueEntryLater> queue_;
  std::uint64_t next_seq_{0};
  std::uint64_t delivered_{0};

  std::optional<RawState> pending_interrupt_;
  std::optional<RawState> last_raw_state_;
  bool dispatching_{false};
  bool done_{false};
  bool terminated_{false};
};

}  // namespace evsim
