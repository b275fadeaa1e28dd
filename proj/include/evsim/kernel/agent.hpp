#pragma once

#include <any>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evsim/kernel/ids.hpp"
#include "evsim/kernel/message.hpp"
#include "evsim/kernel/raw_state.hpp"
#include "evsim/kernel/sim_time.hpp"

namespace evsim {

class Kernel;

/// A simulation participant. Agents only learn about the world through
/// messages the kernel delivers; hooks run on the kernel's thread.
class Agent {
 public:
  explicit Agent(std::string name) : name_(std::move(name)) {}
  virtual ~Agent() = default;

  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  AgentId id() const { return id_; }
  const std::string& name() const { return name_; }

  /// Added to the send time of every message this agent emits. Zero by default.
  Duration computation_delay() const { return computation_delay_; }
  void set_computation_delay(Duration d) { computation_delay_ = d; }

  virtual void kernel_initialize(Kernel&) {}
  virtual void kernel_starting(Kernel&) {}
  virtual void receive_message(Kernel&, const Message&) {}
  virtual void wakeup(Kernel&) {}
  virtual void kernel_stopping(Kernel&) {}
  virtual void kernel_terminating(Kernel&) {}

  const std::vector<std::string>& log_lines() const { return log_; }

  /// Binds roster index and RNG stream. Called once by the kernel; tests may
  /// call it directly on a detached agent.
  void attach(AgentId id, std::uint64_t rng_seed);

 protected:
  std::mt19937_64& rng() { return rng_; }
  void log(std::string line) { log_.push_back(std::move(line)); }

 private:
  std::string name_;
  AgentId id_{};
  Duration computation_delay_{0};
  std::mt19937_64 rng_{0};
  std::vector<std::string> log_;
};

/// Opaque action handed to the interrupting agent when the kernel resumes.
using ActionBundle = std::any;

/// An agent able to pause the kernel and export its raw state (the gym agent).
class InterruptingAgent : public Agent {
 public:
  using Agent::Agent;

  /// Runs as the first event of a resumed run.
  virtual void apply_action(Kernel& kernel, const ActionBundle& action) = 0;

  virtual RawState raw_state(SimTime now) const = 0;
};

}  // namespace evsim
