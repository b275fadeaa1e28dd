#include "evsim/kernel/sim_time.hpp"

#include <cstdio>

namespace evsim {

std::string to_string(SimTime t) {
  constexpr std::int64_t kSecond = 1'000'000'000;
  const bool negative = t.nanos < 0;
  std::int64_t ns = negative ? -t.nanos : t.nanos;
  const std::int64_t secs = ns / kSecond;
  ns %= kSecond;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%02lld:%02lld:%02lld.%09lld", negative ? "-" : "",
                static_cast<long long>(secs / 3600), static_cast<long long>((secs / 60) % 60),
                static_cast<long long>(secs % 60), static_cast<long long>(ns));
  return buf;
}

}  // namespace evsim
