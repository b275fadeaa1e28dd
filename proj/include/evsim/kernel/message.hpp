#pragma once

#include <cstdint>
#include <memory>

#include "evsim/kernel/ids.hpp"
#include "evsim/kernel/sim_time.hpp"

namespace evsim {

/// Base for every domain message body. The kernel never opens bodies.
struct MessageBody {
  virtual ~MessageBody() = default;
};

enum class MessageKind : std::uint8_t { Wakeup, Data };

struct Message {
  AgentId sender;
  AgentId recipient;
  SimTime sent_at;
  SimTime deliver_at;
  MessageKind kind{MessageKind::Data};
  std::shared_ptr<const MessageBody> body;

  bool is_wakeup() const { return kind == MessageKind::Wakeup; }

  template <class T>
  const T* body_as() const {
    return dynamic_cast<const T*>(body.get());
  }
};

struct QueueEntry {
  SimTime deliver_at;
  std::uint64_t seq{0};
  Message message;
};

/// Pops in lexicographic (deliver_at, seq) order.
struct QueueEntryLater {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.deliver_at != b.deliver_at) return a.deliver_at > b.deliver_at;
    return a.seq > b.seq;
  }
};

}  // namespace evsim
