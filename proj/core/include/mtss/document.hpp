#pragma once

// Generic tree for the brace/bracket document dialect, with source spans.
// The MTSS codec (parser.hpp) maps this tree onto the typed schema; the same
// tree and printer carry shot prompts, eval reports, footprints and edit
// records.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mtss/result.hpp"
#include "mtss/time.hpp"

namespace mtss {

struct SourceSpan {
  std::size_t byte_offset_start = 0;
  std::size_t byte_offset_end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  bool operator==(const SourceSpan&) const = default;
};

struct ParseDiagnostic {
  std::string code;  ///< P001..P005
  std::string message;
  SourceSpan span;
};

/// "P001" malformed syntax, "P002" unknown field, "P003" wrong value type,
/// "P004" schema-invariant violation, "P005" bad inline timestamp.
namespace parse_codes {
inline constexpr std::string_view kSyntax = "P001";
inline constexpr std::string_view kUnknownField = "P002";
inline constexpr std::string_view kWrongType = "P003";
inline constexpr std::string_view kSchema = "P004";
inline constexpr std::string_view kBadTimestamp = "P005";
}  // namespace parse_codes

struct Member;

class Value {
 public:
  enum class Kind { Null, Bool, Number, String, Array, Object };

  Value() = default;

  static Value null();
  static Value boolean(bool b);
  /// Number from its exact lexeme.
  static Value number_lexeme(std::string lexeme);
  /// Seconds with exactly three decimals.
  static Value seconds(Millis t);
  /// Shortest round-trip representation.
  static Value number(double d);
  static Value integer(long long n);
  static Value string(std::string s);
  static Value array(std::vector<Value> items = {});
  static Value object();

  Kind kind() const { return kind_; }
  bool is_null() const { return kind_ == Kind::Null; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_number() const { return kind_ == Kind::Number; }
  bool is_string() const { return kind_ == Kind::String; }
  bool is_array() const { return kind_ == Kind::Array; }
  bool is_object() const { return kind_ == Kind::Object; }

  bool as_bool() const { return bool_; }
  /// String contents, or the number lexeme.
  const std::string& text() const { return text_; }
  const std::vector<Value>& items() const { return items_; }
  std::vector<Value>& items() { return items_; }
  const std::vector<Member>& members() const { return members_; }

  const Value* find(std::string_view key) const;
  Value& set(std::string key, Value v);
  Value& push(Value v);

  const SourceSpan& span() const { return span_; }
  void set_span(SourceSpan s) { span_ = s; }

  /// Structural equality; spans are ignored, numbers compare by lexeme.
  bool operator==(const Value& other) const;

 private:
  friend class DocumentParser;

  Kind kind_ = Kind::Null;
  bool bool_ = false;
  std::string text_;
  std::vector<Value> items_;
  std::vector<Member> members_;
  SourceSpan span_;
};

struct Member {
  std::string key;
  SourceSpan key_span;
  Value value;

  bool operator==(const Member& other) const { return key == other.key && value == other.value; }
};

inline constexpr std::size_t kMaxDocumentDepth = 64;

/// Parses one complete value (surrounded by optional whitespace). Syntax
/// errors yield a single P001 diagnostic.
Result<Value, ParseDiagnostic> parse_value(std::string_view text);

/// Canonical layout: objects one member per line with 2-space indent, arrays
/// of scalars inline as `[a, b]`, other arrays one element per line, empty
/// containers as `{}` / `[]`. No trailing newline.
std::string print_value(const Value& v);

std::string quote_string(std::string_view s);

/// Line/column for a byte offset in text.
SourceSpan span_at(std::string_view text, std::size_t begin, std::size_t end);

}  // namespace mtss
