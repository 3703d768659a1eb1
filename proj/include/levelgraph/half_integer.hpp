#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace lg {

// Exact count in units of 1/2.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(std::int64_t t) {
    HalfInteger h;
    h.twice_ = t;
    return h;
  }
  static constexpr HalfInteger whole(std::int64_t n) { return from_twice(2 * n); }
  static constexpr HalfInteger half() { return from_twice(1); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double to_double() const { return 0.5 * static_cast<double>(twice_); }
  constexpr HalfInteger abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInteger& operator-=(HalfInteger o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return a += b; }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return a -= b; }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

  // "5/2", "-1/2", "2"
  std::string to_string() const;
  static HalfInteger parse(const std::string& s);

 private:
  std::int64_t twice_ = 0;
};

}  // namespace lg
