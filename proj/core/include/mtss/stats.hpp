#pragma once

// Corpus statistics for one script: stream counts, the redundancy saved by
// first-mention expansion, and the edit footprint ratio. The footprint probe
// rewrites each shot's visual_description in turn and compares the number of
// changed script field paths with the number of character positions that
// change in the monolithic rendering.

#include <cstddef>
#include <optional>
#include <string>

#include "mtss/schema.hpp"

namespace mtss {

struct RedundancyStats {
  std::size_t bare_length = 0;           ///< no appearance expansion
  std::size_t first_mention_length = 0;  ///< expansion at first mention only
  std::size_t every_mention_length = 0;  ///< expansion at every mention
};

struct FootprintStats {
  std::size_t probes = 0;
  std::size_t changed_paths = 0;
  std::size_t changed_positions = 0;
  /// changed_paths / changed_positions over all probes.
  double ratio = 0.0;
};

struct ScriptStats {
  std::size_t persons = 0, objects = 0, animals = 0, scenes = 0;
  std::size_t shots = 0;
  std::size_t dialogue = 0, sfx = 0, music = 0;
  Millis duration;
  Millis shot_coverage;
  std::size_t lint_errors = 0;
  std::size_t lint_warnings = 0;
  /// Absent when the script has lint errors (rendering refuses such scripts).
  std::optional<RedundancyStats> redundancy;
  std::optional<FootprintStats> footprint;
};

/// Positions i < max(|a|, |b|) where the two texts differ (including the
/// length difference).
std::size_t positional_difference(std::string_view a, std::string_view b);

/// Description rewrite used by the footprint probe.
std::string probe_rewrite(std::string_view description);

FootprintStats footprint_probe(const Script& script);

ScriptStats compute_stats(const Script& script);

std::string format_stats(const ScriptStats& stats);

}  // namespace mtss
