#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mtss {

/// Reference-entity categories, in canonical sort order.
enum class Category { Person, Object, Animal, Scene };

enum class IdKind { Person, Object, Animal, Scene, Shot, Event };

/// A decoded `PREFIX_N` identifier. N is positive with no leading zeros.
struct ParsedId {
  IdKind kind;
  std::uint64_t number;
};

std::optional<ParsedId> parse_id(std::string_view id);

bool is_entity_id(std::string_view id);
bool is_shot_id(std::string_view id);
bool is_event_id(std::string_view id);

std::string_view id_prefix(IdKind kind);
std::string make_id(IdKind kind, std::uint64_t number);

/// Numeric suffix of a well-formed id; 0 when malformed.
std::uint64_t id_number(std::string_view id);

/// Orders ids by kind (PERSON, OBJECT, ANIMAL, SCENE, SHOT, EVENT), then
/// numeric suffix (so SHOT_2 < SHOT_10).
/// Malformed ids sort after well-formed ones, lexicographically.
bool id_less(std::string_view a, std::string_view b);

std::string_view category_name(Category c);
std::optional<Category> parse_category(std::string_view name);
IdKind id_kind_for(Category c);

}  // namespace mtss
