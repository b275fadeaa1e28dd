#include "evsim/market/trade_tape.hpp"

#include <charconv>
#include <stdexcept>
#include <string_view>

namespace evsim::market {

namespace {

constexpr std::string_view kPrefix = "TRADE ";

template <class T>
T parse_field(std::string_view& rest) {
  const auto comma = rest.find(',');
  const std::string_view field = rest.substr(0, comma);
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) throw std::runtime_error("malformed tape row");
  rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  return value;
}

}  // namespace

std::vector<TapeRow> trade_tape(const RunLog& log) {
  std::vector<TapeRow> rows;
  for (const auto& agent : log.agents) {
    if (agent.name != "EXCHANGE") continue;
    for (const auto& line : agent.lines) {
      std::string_view view = line;
      if (!view.starts_with(kPrefix)) continue;
      view.remove_prefix(kPrefix.size());
      TapeRow row;
      row.time_nanos = parse_field<std::int64_t>(view);
      row.price = parse_field<Price>(view);
      row.qty = parse_field<Quantity>(view);
      row.aggressor_id = parse_field<std::uint32_t>(view);
      row.resting_id = parse_field<std::uint32_t>(view);
      rows.push_back(row);
    }
  }
  return rows;
}

std::uint64_t tape_digest(const std::vector<TapeRow>& rows) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& row : rows) {
    for (char c : format_tape_row(row) + '\n') {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace evsim::market
