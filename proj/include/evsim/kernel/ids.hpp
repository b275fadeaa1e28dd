#pragma once

#include <compare>
#include <cstdint>
#include <limits>

namespace evsim {

/// Dense index into the kernel's agent roster.
struct AgentId {
  std::uint32_t value{std::numeric_limits<std::uint32_t>::max()};

  constexpr AgentId() = default;
  constexpr explicit AgentId(std::uint32_t v) : value(v) {}

  constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
  friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive combination of two 64-bit values; used for every derived seed.
constexpr std::uint64_t hash64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

}  // namespace evsim
