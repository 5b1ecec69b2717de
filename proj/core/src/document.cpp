#include "mtss/document.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace mtss {

Value Value::null() { return Value{}; }

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.bool_ = b;
  return v;
}

Value Value::number_lexeme(std::string lexeme) {
  Value v;
  v.kind_ = Kind::Number;
  v.text_ = std::move(lexeme);
  return v;
}

Value Value::seconds(Millis t) { return number_lexeme(format_seconds(t)); }

Value Value::number(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  if (ec != std::errc{} || !std::isfinite(d)) return number_lexeme("0");
  return number_lexeme(std::string(buf, ptr));
}

Value Value::integer(long long n) { return number_lexeme(std::to_string(n)); }

Value Value::string(std::string s) {
  Value v;
  v.kind_ = Kind::String;
  v.text_ = std::move(s);
  return v;
}

Value Value::array(std::vector<Value> items) {
  Value v;
  v.kind_ = Kind::Array;
  v.items_ = std::move(items);
  return v;
}

Value Value::object() {
  Value v;
  v.kind_ = Kind::Object;
  return v;
}

const Value* Value::find(std::string_view key) const {
  for (const auto& m : members_) {
    if (m.key == key) return &m.value;
  }
  return nullptr;
}

Value& Value::set(std::string key, Value v) {
  for (auto& m : members_) {
    if (m.key == key) {
      m.value = std::move(v);
      return m.value;
    }
  }
  members_.push_back({std::move(key), {}, std::move(v)});
  return members_.back().value;
}

Value& Value::push(Value v) {
  items_.push_back(std::move(v));
  return items_.back();
}

bool Value::operator==(const Value& other) const {
  return kind_ == other.kind_ && bool_ == other.bool_ && text_ == other.text_ && items_ == other.items_ &&
         members_ == other.members_;
}

SourceSpan span_at(std::string_view text, std::size_t begin, std::size_t end) {
  SourceSpan span{begin, end, 1, 1};
  const std::size_t stop = std::min(begin, text.size());
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++span.line;
      line_start = i + 1;
    }
  }
  span.column = stop - line_start + 1;
  return span;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : text_(text) {}

  Result<Value, ParseDiagnostic> run() {
    skip_ws();
    Value root;
    if (!parse(root, 0)) return fail(std::move(error_));
    skip_ws();
    if (pos_ < text_.size()) {
      error_at(pos_, pos_ + 1, "unexpected trailing content after the document");
      return fail(std::move(error_));
    }
    return root;
  }

 private:
  // Span starting at the current position; the end is filled in later.
  SourceSpan here() const { return {pos_, pos_, line_, pos_ - line_start_ + 1}; }

  bool error_at(std::size_t begin, std::size_t end, std::string message) {
    end = std::min(std::max(begin, end), text_.size());
    begin = std::min(begin, text_.size());
    error_ = {std::string(parse_codes::kSyntax), std::move(message), span_at(text_, begin, end)};
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        break;
      }
      ++pos_;
    }
  }

  bool parse(Value& out, std::size_t depth) {
    if (depth >= kMaxDocumentDepth) return error_at(pos_, pos_ + 1, "document nested too deeply");
    if (pos_ >= text_.size()) return error_at(pos_, pos_, "unexpected end of input, expected a value");
    SourceSpan start = here();
    const char c = text_[pos_];
    bool ok = false;
    switch (c) {
      case '{': ok = parse_object(out, depth); break;
      case '[': ok = parse_array(out, depth); break;
      case '"':
        out.kind_ = Value::Kind::String;
        ok = parse_string(out.text_);
        break;
      case 't': ok = parse_literal("true", out, Value::Kind::Bool, true); break;
      case 'f': ok = parse_literal("false", out, Value::Kind::Bool, false); break;
      case 'n': ok = parse_literal("null", out, Value::Kind::Null, false); break;
      default:
        if (c == '-' || (c >= '0' && c <= '9')) {
          ok = parse_number(out);
        } else {
          return error_at(pos_, pos_ + 1, std::string("unexpected character '") + printable(c) + "'");
        }
    }
    if (ok) {
      start.byte_offset_end = pos_;
      out.span_ = start;
    }
    return ok;
  }

  static std::string printable(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string(1, c);
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02x", u);
    return buf;
  }

  bool parse_literal(std::string_view word, Value& out, Value::Kind kind, bool b) {
    if (text_.substr(pos_, word.size()) != word)
      return error_at(pos_, pos_ + 1, "invalid literal, expected '" + std::string(word) + "'");
    pos_ += word.size();
    out.kind_ = kind;
    out.bool_ = b;
    return true;
  }

  static bool digit(char c) { return c >= '0' && c <= '9'; }

  bool parse_number(Value& out) {
    const std::size_t begin = pos_;
    if (text_[pos_] == '-') ++pos_;
    if (pos_ >= text_.size() || !digit(text_[pos_])) return error_at(begin, pos_ + 1, "malformed number");
    if (text_[pos_] == '0') {
      ++pos_;
      if (pos_ < text_.size() && digit(text_[pos_])) return error_at(begin, pos_ + 1, "leading zeros are not allowed");
    } else {
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() || !digit(text_[pos_])) return error_at(begin, pos_, "malformed number fraction");
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ >= text_.size() || !digit(text_[pos_])) return error_at(begin, pos_, "malformed number exponent");
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    }
    out.kind_ = Value::Kind::Number;
    out.text_ = std::string(text_.substr(begin, pos_ - begin));
    return true;
  }

  static void append_utf8(std::string& s, std::uint32_t cp) {
    if (cp < 0x80) {
      s.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  bool read_hex4(std::uint32_t& cp) {
    if (pos_ + 4 > text_.size()) return error_at(pos_, text_.size(), "truncated \\u escape");
    cp = 0;
    for (int k = 0; k < 4; ++k) {
      const char h = text_[pos_ + k];
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
      else return error_at(pos_ + k, pos_ + k + 1, "invalid hex digit in \\u escape");
    }
    pos_ += 4;
    return true;
  }

  // Validates one UTF-8 sequence starting at pos_ and appends it.
  bool copy_utf8(std::string& out) {
    const auto b0 = static_cast<unsigned char>(text_[pos_]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (b0 >= 0xC2 && b0 <= 0xDF) { len = 2; cp = b0 & 0x1F; }
    else if (b0 >= 0xE0 && b0 <= 0xEF) { len = 3; cp = b0 & 0x0F; }
    else if (b0 >= 0xF0 && b0 <= 0xF4) { len = 4; cp = b0 & 0x07; }
    else return error_at(pos_, pos_ + 1, "invalid UTF-8 lead byte");
    if (pos_ + len > text_.size()) return error_at(pos_, text_.size(), "truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text_[pos_ + k]);
      if ((b & 0xC0) != 0x80) return error_at(pos_, pos_ + k + 1, "invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    const bool overlong = (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
    if (overlong || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
      return error_at(pos_, pos_ + len, "invalid UTF-8 code point");
    out.append(text_.substr(pos_, len));
    pos_ += len;
    return true;
  }

  bool parse_string(std::string& out) {
    const std::size_t begin = pos_;
    ++pos_;  // opening quote
    out.clear();
    while (true) {
      if (pos_ >= text_.size()) return error_at(begin, pos_, "unterminated string");
      const char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        return true;
      }
      const auto u = static_cast<unsigned char>(c);
      if (u < 0x20) return error_at(pos_, pos_ + 1, "control character in string");
      if (u >= 0x80) {
        if (!copy_utf8(out)) return false;
        continue;
      }
      if (c != '\\') {
        out.push_back(c);
        ++pos_;
        continue;
      }
      ++pos_;
      if (pos_ >= text_.size()) return error_at(begin, pos_, "unterminated string");
      const char e = text_[pos_++];
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case '/': out.push_back('/'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'u': {
          std::uint32_t cp = 0;
          const std::size_t esc = pos_ - 2;
          if (!read_hex4(cp)) return false;
          if (cp >= 0xDC00 && cp <= 0xDFFF) return error_at(esc, pos_, "unpaired low surrogate");
          if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (text_.substr(pos_, 2) != "\\u") return error_at(esc, pos_, "unpaired high surrogate");
            pos_ += 2;
            std::uint32_t low = 0;
            if (!read_hex4(low)) return false;
            if (low < 0xDC00 || low > 0xDFFF) return error_at(esc, pos_, "invalid surrogate pair");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
          }
          append_utf8(out, cp);
          break;
        }
        default: return error_at(pos_ - 2, pos_, "invalid escape sequence");
      }
    }
  }

  bool parse_array(Value& out, std::size_t depth) {
    out.kind_ = Value::Kind::Array;
    ++pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return true;
    }
    while (true) {
      skip_ws();
      Value item;
      if (!parse(item, depth + 1)) return false;
      out.items_.push_back(std::move(item));
      skip_ws();
      if (pos_ >= text_.size()) return error_at(pos_, pos_, "unterminated array, expected ',' or ']'");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        return true;
      }
      return error_at(pos_, pos_ + 1, "expected ',' or ']' in array");
    }
  }

  bool parse_object(Value& out, std::size_t depth) {
    out.kind_ = Value::Kind::Object;
    ++pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return true;
    }
    while (true) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '"') return error_at(pos_, pos_ + 1, "expected a quoted key");
      const std::size_t key_begin = pos_;
      Member m;
      m.key_span = here();
      if (!parse_string(m.key)) return false;
      m.key_span.byte_offset_end = pos_;
      for (const auto& existing : out.members_) {
        if (existing.key == m.key) return error_at(key_begin, pos_, "duplicate key \"" + m.key + "\"");
      }
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ':') return error_at(pos_, pos_ + 1, "expected ':' after key");
      ++pos_;
      skip_ws();
      if (!parse(m.value, depth + 1)) return false;
      out.members_.push_back(std::move(m));
      skip_ws();
      if (pos_ >= text_.size()) return error_at(pos_, pos_, "unterminated object, expected ',' or '}'");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        return true;
      }
      return error_at(pos_, pos_ + 1, "expected ',' or '}' in object");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
  ParseDiagnostic error_;
};

Result<Value, ParseDiagnostic> parse_value(std::string_view text) { return DocumentParser(text).run(); }

std::string quote_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

namespace {

bool is_scalar(const Value& v) { return !v.is_array() && !v.is_object(); }

void print_into(std::string& out, const Value& v, std::size_t indent) {
  switch (v.kind()) {
    case Value::Kind::Null: out += "null"; return;
    case Value::Kind::Bool: out += v.as_bool() ? "true" : "false"; return;
    case Value::Kind::Number: out += v.text(); return;
    case Value::Kind::String: out += quote_string(v.text()); return;
    case Value::Kind::Array: {
      if (v.items().empty()) {
        out += "[]";
        return;
      }
      if (std::all_of(v.items().begin(), v.items().end(), is_scalar)) {
        out.push_back('[');
        for (std::size_t i = 0; i < v.items().size(); ++i) {
          if (i) out += ", ";
          print_into(out, v.items()[i], indent);
        }
        out.push_back(']');
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.items().size(); ++i) {
        out.append(indent + 2, ' ');
        print_into(out, v.items()[i], indent + 2);
        if (i + 1 < v.items().size()) out.push_back(',');
        out.push_back('\n');
      }
      out.append(indent, ' ');
      out.push_back(']');
      return;
    }
    case Value::Kind::Object: {
      if (v.members().empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < v.members().size(); ++i) {
        const auto& m = v.members()[i];
        out.append(indent + 2, ' ');
        out += quote_string(m.key);
        out += ": ";
        print_into(out, m.value, indent + 2);
        if (i + 1 < v.members().size()) out.push_back(',');
        out.push_back('\n');
      }
      out.append(indent, ' ');
      out.push_back('}');
      return;
    }
  }
}

}  // namespace

std::string print_value(const Value& v) {
  std::string out;
  print_into(out, v, 0);
  return out;
}

}  // namespace mtss
