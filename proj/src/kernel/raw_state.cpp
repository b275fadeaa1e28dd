#include "evsim/kernel/raw_state.hpp"

#include <stdexcept>

namespace evsim {

void RawState::set(std::string key, RawValue value) { values_.insert_or_assign(std::move(key), std::move(value)); }

void RawState::erase(std::string_view key) {
  if (auto it = values_.find(key); it != values_.end()) values_.erase(it);
}

bool RawState::contains(std::string_view key) const { return values_.find(key) != values_.end(); }

const RawValue& RawState::at(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("raw state has no field '" + std::string(key) + "'");
  return it->second;
}

std::int64_t RawState::integer(std::string_view key) const { return std::get<std::int64_t>(at(key)); }

std::optional<std::int64_t> RawState::optional_integer(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return std::get<std::int64_t>(it->second);
}

double RawState::real(std::string_view key) const { return std::get<double>(at(key)); }

bool RawState::flag(std::string_view key) const { return std::get<bool>(at(key)); }

const std::vector<std::int64_t>& RawState::integers(std::string_view key) const {
  return std::get<std::vector<std::int64_t>>(at(key));
}

const std::vector<double>& RawState::reals(std::string_view key) const {
  return std::get<std::vector<double>>(at(key));
}

}  // namespace evsim
