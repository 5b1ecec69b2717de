#pragma once

// Path-level structural diff of two documents. Object members recurse by
// key; arrays whose elements are all objects with a string "id" recurse by
// id; anything else (scalars, id lists, time ranges) is compared as a
// whole. Paths look like "shots/SHOT_1/time_range" or "references/PERSON_2"
// for an element that was added or removed.

#include <string>
#include <string_view>
#include <vector>

#include "mtss/document.hpp"
#include "mtss/result.hpp"

namespace mtss {

/// Sorted, deduplicated changed paths.
std::vector<std::string> diff_paths(const Value& before, const Value& after);

/// Parses both texts and diffs them. Either text failing to parse yields the
/// parse diagnostic.
Result<std::vector<std::string>, ParseDiagnostic> diff_document_text(std::string_view before, std::string_view after);

}  // namespace mtss
