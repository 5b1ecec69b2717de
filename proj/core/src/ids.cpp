#include "mtss/ids.hpp"

#include <array>
#include <utility>

namespace mtss {

namespace {

constexpr std::array<std::pair<IdKind, std::string_view>, 6> kPrefixes{{
    {IdKind::Person, "PERSON"},
    {IdKind::Object, "OBJECT"},
    {IdKind::Animal, "ANIMAL"},
    {IdKind::Scene, "SCENE"},
    {IdKind::Shot, "SHOT"},
    {IdKind::Event, "EVENT"},
}};

// 18 digits keeps the suffix well inside uint64.
constexpr std::size_t kMaxSuffixDigits = 18;

}  // namespace

std::optional<ParsedId> parse_id(std::string_view id) {
  const auto underscore = id.find('_');
  if (underscore == std::string_view::npos) return std::nullopt;
  const auto prefix = id.substr(0, underscore);
  const auto digits = id.substr(underscore + 1);
  if (digits.empty() || digits.size() > kMaxSuffixDigits || digits.front() == '0') return std::nullopt;

  std::uint64_t number = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    number = number * 10 + static_cast<std::uint64_t>(c - '0');
  }
  for (const auto& [kind, name] : kPrefixes) {
    if (name == prefix) return ParsedId{kind, number};
  }
  return std::nullopt;
}

bool is_entity_id(std::string_view id) {
  const auto parsed = parse_id(id);
  return parsed && parsed->kind != IdKind::Shot && parsed->kind != IdKind::Event;
}

bool is_shot_id(std::string_view id) {
  const auto parsed = parse_id(id);
  return parsed && parsed->kind == IdKind::Shot;
}

bool is_event_id(std::string_view id) {
  const auto parsed = parse_id(id);
  return parsed && parsed->kind == IdKind::Event;
}

std::string_view id_prefix(IdKind kind) {
  for (const auto& [k, name] : kPrefixes) {
    if (k == kind) return name;
  }
  return {};
}

std::string make_id(IdKind kind, std::uint64_t number) {
  std::string out(id_prefix(kind));
  out.push_back('_');
  out += std::to_string(number);
  return out;
}

std::uint64_t id_number(std::string_view id) {
  const auto parsed = parse_id(id);
  return parsed ? parsed->number : 0;
}

bool id_less(std::string_view a, std::string_view b) {
  const auto pa = parse_id(a);
  const auto pb = parse_id(b);
  if (pa && pb) {
    if (pa->kind != pb->kind) return pa->kind < pb->kind;
    return pa->number < pb->number;
  }
  if (pa.has_value() != pb.has_value()) return pa.has_value();
  return a < b;
}

std::string_view category_name(Category c) {
  switch (c) {
    case Category::Person: return "person";
    case Category::Object: return "object";
    case Category::Animal: return "animal";
    case Category::Scene: return "scene";
  }
  return {};
}

std::optional<Category> parse_category(std::string_view name) {
  if (name == "person") return Category::Person;
  if (name == "object") return Category::Object;
  if (name == "animal") return Category::Animal;
  if (name == "scene") return Category::Scene;
  return std::nullopt;
}

IdKind id_kind_for(Category c) {
  switch (c) {
    case Category::Person: return IdKind::Person;
    case Category::Object: return IdKind::Object;
    case Category::Animal: return IdKind::Animal;
    case Category::Scene: return IdKind::Scene;
  }
  return IdKind::Person;
}

}  // namespace mtss
