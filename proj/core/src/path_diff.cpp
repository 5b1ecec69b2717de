#include "mtss/path_diff.hpp"

#include <algorithm>
#include <map>

namespace mtss {

namespace {

std::string child(const std::string& prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : prefix + "/" + std::string(key);
}

// Returns id -> element when every element is an object with a string id and
// ids are unique.
bool keyed_by_id(const Value& arr, std::map<std::string, const Value*>& out) {
  if (arr.items().empty()) return true;
  for (const auto& item : arr.items()) {
    if (!item.is_object()) return false;
    const Value* id = item.find("id");
    if (!id || !id->is_string()) return false;
    if (!out.emplace(id->text(), &item).second) return false;
  }
  return true;
}

void diff_into(const std::string& path, const Value& a, const Value& b, std::vector<std::string>& out) {
  if (a.is_object() && b.is_object()) {
    for (const auto& m : a.members()) {
      const Value* other = b.find(m.key);
      if (!other) out.push_back(child(path, m.key));
      else diff_into(child(path, m.key), m.value, *other, out);
    }
    for (const auto& m : b.members()) {
      if (!a.find(m.key)) out.push_back(child(path, m.key));
    }
    return;
  }
  if (a.is_array() && b.is_array() && !(a.items().empty() && b.items().empty())) {
    std::map<std::string, const Value*> ka;
    std::map<std::string, const Value*> kb;
    const bool records = keyed_by_id(a, ka) && keyed_by_id(b, kb) && !(ka.empty() && kb.empty());
    if (records) {
      for (const auto& [id, va] : ka) {
        auto it = kb.find(id);
        if (it == kb.end()) out.push_back(child(path, id));
        else diff_into(child(path, id), *va, *it->second, out);
      }
      for (const auto& [id, vb] : kb) {
        if (!ka.count(id)) out.push_back(child(path, id));
      }
      return;
    }
  }
  if (!(a == b)) out.push_back(path);
}

}  // namespace

std::vector<std::string> diff_paths(const Value& before, const Value& after) {
  std::vector<std::string> out;
  diff_into({}, before, after, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Result<std::vector<std::string>, ParseDiagnostic> diff_document_text(std::string_view before, std::string_view after) {
  auto a = parse_value(before);
  if (!a) return fail(a.error());
  auto b = parse_value(after);
  if (!b) return fail(b.error());
  return diff_paths(*a, *b);
}

}  // namespace mtss
