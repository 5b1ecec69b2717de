#pragma once

// Micro-grammar for time markers embedded in shot descriptions:
//
//   [t=<seconds>]        e.g. [t=3.2]
//   [t=<mm>:<ss.fff>]    e.g. [t=01:02.5]  (seconds part < 60)
//
// Any "[t=" that does not complete one of the two forms is an error. Other
// brackets are ordinary text.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtss/result.hpp"
#include "mtss/time.hpp"

namespace mtss {

struct InlineTimestamp {
  /// Byte offset of the marker in the original description. Strictly
  /// increasing within one description.
  std::size_t text_offset = 0;
  Millis time;
  /// The marker exactly as written, brackets included.
  std::string marker;

  bool operator==(const InlineTimestamp&) const = default;
};

struct ExtractedTimestamps {
  std::vector<InlineTimestamp> timestamps;
  std::string stripped_text;
};

struct MarkerError {
  std::size_t offset = 0;  ///< byte offset of the offending "[t="
  std::size_t length = 0;  ///< bytes of the malformed marker candidate
  std::string message;
};

Result<ExtractedTimestamps, MarkerError> extract_inline_timestamps(std::string_view text);

/// Inverse of extraction: puts every marker back at its original offset.
std::string reinsert_timestamps(std::string_view stripped, std::span<const InlineTimestamp> timestamps);

/// Canonical marker text for a time: "[t=3.200]".
std::string format_marker(Millis t);

}  // namespace mtss
