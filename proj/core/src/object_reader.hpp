#pragma once

// Internal helper shared by the document codec and the edit-script reader.

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtss/document.hpp"
#include "mtss/parser.hpp"

namespace mtss::detail {

inline ParseDiagnostic diag(std::string_view code, std::string message, const SourceSpan& span) {
  return {std::string(code), std::move(message), span};
}

inline std::string_view kind_label(Value::Kind k) {
  switch (k) {
    case Value::Kind::Null: return "null";
    case Value::Kind::Bool: return "boolean";
    case Value::Kind::Number: return "number";
    case Value::Kind::String: return "string";
    case Value::Kind::Array: return "array";
    case Value::Kind::Object: return "object";
  }
  return {};
}

// Walks one object: rejects unknown keys, hands out typed fields.
class ObjectReader {
 public:
  ObjectReader(const Value& obj, std::string_view where, std::initializer_list<std::string_view> allowed,
               std::vector<ParseDiagnostic>& diags)
      : obj_(obj), where_(where), diags_(diags) {
    if (!obj.is_object()) {
      diags_.push_back(diag(parse_codes::kWrongType,
                            std::string(where_) + " must be an object, found " + std::string(kind_label(obj.kind())),
                            obj.span()));
      valid_ = false;
      return;
    }
    for (const auto& m : obj.members()) {
      if (std::find(allowed.begin(), allowed.end(), m.key) == allowed.end())
        diags_.push_back(diag(parse_codes::kUnknownField, "unknown field \"" + m.key + "\" in " + std::string(where_),
                              m.key_span));
    }
  }

  bool valid() const { return valid_; }

  const Value* get(std::string_view key, bool required) {
    if (!valid_) return nullptr;
    const Value* v = obj_.find(key);
    if (!v && required)
      diags_.push_back(diag(parse_codes::kSchema,
                            "missing required field \"" + std::string(key) + "\" in " + std::string(where_),
                            obj_.span()));
    return v;
  }

  std::optional<std::string> string(std::string_view key, bool required) {
    const Value* v = get(key, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      wrong_type(*v, key, "a string");
      return std::nullopt;
    }
    return v->text();
  }

  std::optional<Millis> time(std::string_view key, bool required) {
    const Value* v = get(key, required);
    if (!v) return std::nullopt;
    auto t = decode_time(*v);
    if (!t) wrong_type(*v, key, "a time in seconds");
    return t;
  }

  std::optional<TimeRange> range(std::string_view key, bool required) {
    const Value* v = get(key, required);
    if (!v) return std::nullopt;
    auto r = decode_time_range(*v);
    if (!r) wrong_type(*v, key, "a [start, end] pair of times");
    return r;
  }

  std::vector<std::string> string_list(std::string_view key) {
    std::vector<std::string> out;
    const Value* v = get(key, false);
    if (!v) return out;
    if (!v->is_array()) {
      wrong_type(*v, key, "an array of ids");
      return out;
    }
    for (const auto& item : v->items()) {
      if (!item.is_string()) {
        wrong_type(item, key, "an id string");
        continue;
      }
      out.push_back(item.text());
    }
    return out;
  }

  void wrong_type(const Value& v, std::string_view key, std::string_view expected) {
    diags_.push_back(diag(parse_codes::kWrongType,
                          "field \"" + std::string(key) + "\" in " + std::string(where_) + " must be " +
                              std::string(expected) + ", found " + std::string(kind_label(v.kind())),
                          v.span()));
  }

 private:
  const Value& obj_;
  std::string_view where_;
  std::vector<ParseDiagnostic>& diags_;
  bool valid_ = true;
};

}  // namespace mtss::detail
