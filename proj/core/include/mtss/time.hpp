#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mtss {

/// A point or length on the script's time axis, stored as whole milliseconds.
/// Documents carry decimal seconds with three fractional digits, so integer
/// milliseconds round-trip exactly.
struct Millis {
  std::int64_t count = 0;

  constexpr auto operator<=>(const Millis&) const = default;

  constexpr Millis& operator+=(Millis other) {
    count += other.count;
    return *this;
  }
  constexpr Millis& operator-=(Millis other) {
    count -= other.count;
    return *this;
  }
  friend constexpr Millis operator+(Millis a, Millis b) { return Millis{a.count + b.count}; }
  friend constexpr Millis operator-(Millis a, Millis b) { return Millis{a.count - b.count}; }
};

/// Overlap and containment tolerance.
inline constexpr Millis kEpsilon{1};

constexpr Millis from_ms(std::int64_t ms) { return Millis{ms}; }
double to_seconds(Millis t);
/// Rounds to the nearest millisecond, halves away from zero.
Millis from_seconds(double seconds);

/// "3.200", "-0.005", "62.500".
std::string format_seconds(Millis t);

/// Parses a plain decimal ("12", "3.2", "-0.0005", "1e3") into milliseconds.
/// Fractions beyond millisecond resolution are rounded half away from zero.
/// Returns nullopt for malformed text or magnitudes above ~31 millennia.
std::optional<Millis> parse_decimal_seconds(std::string_view text);

/// Half-open [start, end) on the time axis.
struct TimeRange {
  Millis start;
  Millis end;

  constexpr Millis length() const { return end - start; }
  constexpr bool valid() const { return start.count >= 0 && start < end; }
  constexpr bool contains(Millis t) const { return start <= t && t < end; }

  constexpr auto operator<=>(const TimeRange&) const = default;
};

}  // namespace mtss
