#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace msmd {

using Vertex = std::uint32_t;
using Dist = std::uint32_t;

// Distance to a vertex in another component.
inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

// Invalid arguments and malformed input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DisconnectedGraphError : public InputError {
 public:
  DisconnectedGraphError() : InputError("graph is disconnected") {}
  explicit DisconnectedGraphError(const std::string& what) : InputError(what) {}
};

// Exact enumeration refused because the instance exceeds the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size that may be infinite, e.g. the multiset metric dimension.
class ExtendedCount {
 public:
  constexpr ExtendedCount() = default;
  constexpr explicit ExtendedCount(std::size_t v) : value_(v) {}
  static constexpr ExtendedCount infinite() { return ExtendedCount{}; }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  std::size_t value() const {
    if (!value_) throw std::logic_error("ExtendedCount: value of infinite count");
    return *value_;
  }

  friend constexpr bool operator==(const ExtendedCount&, const ExtendedCount&) = default;
  friend constexpr std::strong_ordering operator<=>(const ExtendedCount& a, const ExtendedCount& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

 private:
  std::optional<std::size_t> value_{};
};

}  // namespace msmd
