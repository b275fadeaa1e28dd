#include "evsim/kernel/run_log.hpp"

#include <sstream>

namespace evsim {

std::string serialize(const RunLog& log) {
  std::ostringstream out;
  out << "final_time " << log.final_time.nanos << '\n'
      << "messages " << log.messages_routed << ' ' << log.messages_delivered << ' ' << log.messages_pending << '\n';
  for (const auto& a : log.agents) {
    out << "agent " << a.id.value << ' ' << a.name << ' ' << a.lines.size() << '\n';
    for (const auto& line : a.lines) out << line << '\n';
  }
  return out.str();
}

}  // namespace evsim
