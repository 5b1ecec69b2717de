#include "mtss/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace mtss {

namespace {

// Largest magnitude accepted anywhere on the time axis (about 31,700 years).
constexpr std::int64_t kMaxMillis = 1'000'000'000'000'000LL;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

double to_seconds(Millis t) { return static_cast<double>(t.count) / 1000.0; }

Millis from_seconds(double seconds) { return Millis{std::llround(seconds * 1000.0)}; }

std::string format_seconds(Millis t) {
  std::int64_t v = t.count;
  std::string out;
  if (v < 0) {
    out.push_back('-');
    v = -v;
  }
  out += std::to_string(v / 1000);
  out.push_back('.');
  const auto frac = std::to_string(v % 1000);
  out.append(3 - frac.size(), '0');
  out += frac;
  return out;
}

std::optional<Millis> parse_decimal_seconds(std::string_view text) {
  if (text.empty()) return std::nullopt;

  if (text.find_first_of("eE") != std::string_view::npos) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (*first == '+') return std::nullopt;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
    if (std::fabs(value) * 1000.0 > static_cast<double>(kMaxMillis)) return std::nullopt;
    return from_seconds(value);
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-') {
    negative = true;
    ++i;
  }
  const std::size_t int_begin = i;
  while (i < text.size() && is_digit(text[i])) ++i;
  const std::size_t int_len = i - int_begin;
  if (int_len == 0 || int_len > 13) return std::nullopt;

  std::int64_t whole = 0;
  for (std::size_t k = int_begin; k < int_begin + int_len; ++k) whole = whole * 10 + (text[k] - '0');

  std::int64_t frac_ms = 0;
  if (i < text.size()) {
    if (text[i] != '.') return std::nullopt;
    ++i;
    const std::size_t frac_begin = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    if (i != text.size() || i == frac_begin) return std::nullopt;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t pos = frac_begin + k;
      frac_ms = frac_ms * 10 + (pos < text.size() ? text[pos] - '0' : 0);
    }
    if (frac_begin + 3 < text.size() && text[frac_begin + 3] >= '5') ++frac_ms;
  }

  std::int64_t total = whole * 1000 + frac_ms;
  if (total > kMaxMillis) return std::nullopt;
  return Millis{negative ? -total : total};
}

}  // namespace mtss
