#include "evsim/kernel/kernel.hpp"

#include <algorithm>
#include <string>

namespace evsim {

namespace {

constexpr std::uint64_t kJitterStream = 0xffff'ffff'ffff'fffeULL;

}  // namespace

Duration LatencySpec::base_between(AgentId sender, AgentId recipient, std::size_t agent_count) const {
  if (pair_base.empty()) return base;
  return pair_base.at(static_cast<std::size_t>(sender.value) * agent_count + recipient.value);
}

Kernel::Kernel(KernelConfig config)
    : start_(config.start_time),
      end_(config.end_time),
      now_(config.start_time),
      seed_(config.seed),
      latency_(std::move(config.latency)),
      agents_(std::move(config.agents)),
      interrupting_(config.interrupting_agent),
      jitter_rng_(hash64(config.seed, kJitterStream)) {
  if (agents_.empty()) throw ConfigError("kernel roster is empty");
  if (!(start_ < end_)) throw ConfigError("kernel start_time must precede end_time");
  if (start_.nanos < 0) throw ConfigError("kernel start_time must be non-negative");
  if (std::any_of(agents_.begin(), agents_.end(), [](const auto& a) { return a == nullptr; }))
    throw ConfigError("kernel roster contains a null agent");
  if (latency_.base < Duration::zero() || latency_.jitter_max < Duration::zero())
    throw ConfigError("latency must be non-negative");
  if (!latency_.pair_base.empty()) {
    if (latency_.pair_base.size() != agents_.size() * agents_.size())
      throw ConfigError("pairwise latency matrix must be agent_count x agent_count");
    if (std::any_of(latency_.pair_base.begin(), latency_.pair_base.end(),
                    [](Duration d) { return d < Duration::zero(); }))
      throw ConfigError("latency must be non-negative");
  }
  if (interrupting_) {
    if (interrupting_->value >= agents_.size()) throw ConfigError("interrupting agent is not in the roster");
    if (dynamic_cast<InterruptingAgent*>(agents_[interrupting_->value].get()) == nullptr)
      throw ConfigError("interrupting agent does not implement InterruptingAgent");
  }

  for (std::uint32_t i = 0; i < agents_.size(); ++i) agents_[i]->attach(AgentId{i}, hash64(seed_, i));

  dispatching_ = true;
  for (auto& a : agents_) a->kernel_initialize(*this);
  for (auto& a : agents_) a->kernel_starting(*this);
  dispatching_ = false;
}

Agent& Kernel::agent(AgentId id) {
  if (!id.valid() || id.value >= agents_.size()) throw RoutingError("unknown agent " + std::to_string(id.value));
  return *agents_[id.value];
}

const Agent& Kernel::agent(AgentId id) const {
  if (!id.valid() || id.value >= agents_.size()) throw RoutingError("unknown agent " + std::to_string(id.value));
  return *agents_[id.value];
}

void Kernel::enqueue(Message message) {
  const SimTime at = message.deliver_at;
  queue_.push(QueueEntry{at, next_seq_++, std::move(message)});
}

void Kernel::send(AgentId sender, AgentId recipient, std::shared_ptr<const MessageBody> body) {
  if (terminated_) throw StateError("send on a terminated kernel");
  const Agent& from = agent(sender);
  agent(recipient);

  const SimTime sent_at = now_ + from.computation_delay();
  Duration jitter{0};
  if (latency_.jitter_max > Duration::zero()) {
    std::uniform_int_distribution<std::int64_t> draw(0, latency_.jitter_max.count());
    jitter = Duration{draw(jitter_rng_)};
  }
  SimTime deliver_at = sent_at + latency_.base_between(sender, recipient, agents_.size()) + jitter;
  deliver_at = std::max(deliver_at, now_);

  enqueue(Message{sender, recipient, sent_at, deliver_at, MessageKind::Data, std::move(body)});
}

void Kernel::schedule_wakeup(AgentId id, SimTime at) {
  if (terminated_) throw StateError("wakeup scheduled on a terminated kernel");
  agent(id);
  if (at < now_) throw SchedulingError("wakeup at " + to_string(at) + " precedes clock " + to_string(now_));
  enqueue(Message{id, id, now_, at, MessageKind::Wakeup, nullptr});
}

void Kernel::interrupt(AgentId id, RawState raw_state) {
  if (!interrupting_ || *interrupting_ != id) throw StateError("interrupt from an agent not designated to interrupt");
  if (!dispatching_) throw StateError("interrupt outside of an agent hook");
  last_raw_state_ = raw_state;
  pending_interrupt_ = std::move(raw_state);
}

void Kernel::deliver(const Message& message) {
  Agent& target = *agents_[message.recipient.value];
  if (message.is_wakeup())
    target.wakeup(*this);
  else
    target.receive_message(*this, message);
}

RunResult Kernel::run(std::optional<ActionBundle> injected_action) {
  if (terminated_) throw StateError("run on a terminated kernel");
  if (done_) throw StateError("run on a kernel whose simulation already finished");

  dispatching_ = true;
  if (injected_action) {
    if (!interrupting_) {
      dispatching_ = false;
      throw StateError("injected action without an interrupting agent");
    }
    static_cast<InterruptingAgent&>(*agents_[interrupting_->value]).apply_action(*this, *injected_action);
  }

  while (!pending_interrupt_ && !queue_.empty() && queue_.top().deliver_at <= end_) {
    QueueEntry entry = queue_.top();
    queue_.pop();
    now_ = entry.deliver_at;
    ++delivered_;
    deliver(entry.message);
  }
  dispatching_ = false;

  if (pending_interrupt_) {
    RunResult result{RunStatus::Interrupted, std::move(pending_interrupt_)};
    pending_interrupt_.reset();
    return result;
  }

  done_ = true;
  RunResult result{RunStatus::Done, std::nullopt};
  if (interrupting_) {
    result.raw_state = static_cast<const InterruptingAgent&>(*agents_[interrupting_->value]).raw_state(now_);
    last_raw_state_ = result.raw_state;
  }
  return result;
}

RunLog Kernel::terminate() {
  if (terminated_) throw StateError("kernel already terminated");
  dispatching_ = true;
  for (auto& a : agents_) a->kernel_stopping(*this);
  for (auto& a : agents_) a->kernel_terminating(*this);
  dispatching_ = false;
  terminated_ = true;

  RunLog log;
  log.final_time = now_;
  log.messages_routed = next_seq_;
  log.messages_delivered = delivered_;
  log.messages_pending = queue_.size();
  log.agents.reserve(agents_.size());
  for (const auto& a : agents_) log.agents.push_back(AgentLog{a->id(), a->name(), a->log_lines()});
  return log;
}

std::vector<QueueEntry> Kernel::pending() const {
  auto copy = queue_;
  std::vector<QueueEntry> out;
  out.reserve(copy.size());
  while (!copy.empty()) {
    out.push_back(copy.top());
    copy.pop();
  }
  return out;
}

}  // namespace evsim
