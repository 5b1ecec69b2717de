#include "mtss/inline_timestamps.hpp"

#include <algorithm>
#include <optional>

namespace mtss {

namespace {

constexpr std::string_view kOpen = "[t=";
constexpr std::size_t kMaxMarkerBody = 32;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// digits ('.' digits)?  -> milliseconds, rounding half up past the third
// fractional digit.
std::optional<std::int64_t> parse_plain_seconds(std::string_view s, std::size_t max_int_digits) {
  std::size_t i = 0;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i == 0 || i > max_int_digits) return std::nullopt;
  std::int64_t whole = 0;
  for (std::size_t k = 0; k < i; ++k) whole = whole * 10 + (s[k] - '0');
  std::int64_t frac = 0;
  if (i < s.size()) {
    if (s[i] != '.') return std::nullopt;
    const std::size_t begin = ++i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i != s.size() || i == begin) return std::nullopt;
    for (std::size_t k = 0; k < 3; ++k) frac = frac * 10 + (begin + k < s.size() ? s[begin + k] - '0' : 0);
    if (begin + 3 < s.size() && s[begin + 3] >= '5') ++frac;
  }
  return whole * 1000 + frac;
}

std::optional<Millis> parse_marker_body(std::string_view body) {
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) {
    const auto ms = parse_plain_seconds(body, 9);
    if (!ms) return std::nullopt;
    return Millis{*ms};
  }
  const auto minutes_text = body.substr(0, colon);
  const auto seconds_text = body.substr(colon + 1);
  if (minutes_text.empty() || minutes_text.size() > 7) return std::nullopt;
  std::int64_t minutes = 0;
  for (char c : minutes_text) {
    if (!is_digit(c)) return std::nullopt;
    minutes = minutes * 10 + (c - '0');
  }
  const auto ms = parse_plain_seconds(seconds_text, 2);
  if (!ms || *ms >= 60'000) return std::nullopt;
  return Millis{minutes * 60'000 + *ms};
}

}  // namespace

Result<ExtractedTimestamps, MarkerError> extract_inline_timestamps(std::string_view text) {
  ExtractedTimestamps out;
  out.stripped_text.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find(kOpen, pos);
    if (open == std::string_view::npos) break;
    out.stripped_text.append(text.substr(pos, open - pos));

    const std::size_t body_begin = open + kOpen.size();
    std::size_t close = body_begin;
    while (close < text.size() && close - body_begin <= kMaxMarkerBody && text[close] != ']' &&
           text[close] != '[' && text[close] != '\n')
      ++close;
    if (close >= text.size() || text[close] != ']') {
      return fail(MarkerError{open, close - open, "unterminated time marker"});
    }
    const auto body = text.substr(body_begin, close - body_begin);
    const auto time = parse_marker_body(body);
    if (!time) {
      return fail(MarkerError{open, close + 1 - open,
                              "time marker \"" + std::string(text.substr(open, close + 1 - open)) +
                                  "\" is not [t=<seconds>] or [t=<mm>:<ss.fff>]"});
    }
    out.timestamps.push_back({open, *time, std::string(text.substr(open, close + 1 - open))});
    pos = close + 1;
  }
  if (pos < text.size()) out.stripped_text.append(text.substr(pos));
  return out;
}

std::string reinsert_timestamps(std::string_view stripped, std::span<const InlineTimestamp> timestamps) {
  std::string out;
  out.reserve(stripped.size() + timestamps.size() * 10);
  std::size_t consumed = 0;
  for (const auto& ts : timestamps) {
    // Offsets are in original coordinates; out.size() tracks that frame.
    const std::size_t want = ts.text_offset > out.size() ? ts.text_offset - out.size() : 0;
    const std::size_t take = std::min(want, stripped.size() - consumed);
    out.append(stripped.substr(consumed, take));
    consumed += take;
    out += ts.marker;
  }
  out.append(stripped.substr(consumed));
  return out;
}

std::string format_marker(Millis t) { return "[t=" + format_seconds(t) + "]"; }

}  // namespace mtss
