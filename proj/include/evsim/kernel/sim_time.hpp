#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

namespace evsim {

using Duration = std::chrono::nanoseconds;

/// Integer nanoseconds since midnight of the simulated date.
struct SimTime {
  std::int64_t nanos{0};

  constexpr SimTime() = default;
  constexpr explicit SimTime(std::int64_t ns) : nanos(ns) {}

  friend constexpr auto operator<=>(SimTime, SimTime) = default;

  friend constexpr SimTime operator+(SimTime t, Duration d) { return SimTime{t.nanos + d.count()}; }
  friend constexpr SimTime operator-(SimTime t, Duration d) { return SimTime{t.nanos - d.count()}; }
  friend constexpr Duration operator-(SimTime a, SimTime b) { return Duration{a.nanos - b.nanos}; }
  constexpr SimTime& operator+=(Duration d) {
    nanos += d.count();
    return *this;
  }
};

/// Wall-clock time of day on the simulated date.
constexpr SimTime clock_time(int hours, int minutes, int seconds = 0) {
  using namespace std::chrono;
  return SimTime{duration_cast<Duration>(std::chrono::hours(hours) + std::chrono::minutes(minutes) +
                                         std::chrono::seconds(seconds))
                     .count()};
}

constexpr Duration seconds(double s) {
  return Duration{static_cast<std::int64_t>(s * 1e9 + (s >= 0 ? 0.5 : -0.5))};
}

/// "HH:MM:SS.nnnnnnnnn"
std::string to_string(SimTime t);

}  // namespace evsim
