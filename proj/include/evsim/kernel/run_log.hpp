#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evsim/kernel/ids.hpp"
#include "evsim/kernel/sim_time.hpp"

namespace evsim {

struct AgentLog {
  AgentId id;
  std::string name;
  std::vector<std::string> lines;
};

struct RunLog {
  std::vector<AgentLog> agents;
  SimTime final_time;
  std::uint64_t messages_routed{0};
  std::uint64_t messages_delivered{0};
  std::uint64_t messages_pending{0};
};

/// Byte-exact text dump; identical runs produce identical strings.
std::string serialize(const RunLog& log);

}  // namespace evsim
