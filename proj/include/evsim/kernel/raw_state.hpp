#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evsim {

using RawValue = std::variant<std::int64_t, double, bool, std::vector<std::int64_t>, std::vector<double>>;

/// Untyped bundle an interrupting agent hands out of the simulator.
///
/// Accessors throw std::out_of_range for a missing key and
/// std::bad_variant_access for a type mismatch.
class RawState {
 public:
  void set(std::string key, RawValue value);
  void erase(std::string_view key);
  bool contains(std::string_view key) const;

  std::int64_t integer(std::string_view key) const;
  std::optional<std::int64_t> optional_integer(std::string_view key) const;
  double real(std::string_view key) const;
  bool flag(std::string_view key) const;
  const std::vector<std::int64_t>& integers(std::string_view key) const;
  const std::vector<double>& reals(std::string_view key) const;

  const std::map<std::string, RawValue, std::less<>>& values() const { return values_; }
  bool empty() const { return values_.empty(); }

  friend bool operator==(const RawState&, const RawState&) = default;

 private:
  const RawValue& at(std::string_view key) const;

  std::map<std::string, RawValue, std::less<>> values_;
};

}  // namespace evsim
