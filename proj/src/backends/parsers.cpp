#include "clay/backends/parsers.hpp"

#include <set>

#include "json.hpp"

namespace clay {

using nlohmann::json;

StructuralError::StructuralError(const std::string &message)
    : Error(ErrorCode::backend_failure, message, false) {}

namespace {

constexpr int kMaxDepth = 64;
constexpr std::size_t kExcerpt = 200;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const std::string &what, std::string_view raw) {
  std::string excerpt(raw.substr(0, kExcerpt));
  throw ParseError(what + (raw.size() > kExcerpt ? " in: " + excerpt + "..."
                                                 : " in: " + excerpt),
                   std::string(raw));
}

std::string unfence(std::string_view raw) {
  std::string t = trim(raw);
  if (t.rfind("```", 0) != 0)
    return t;
  auto nl = t.find('\n');
  if (nl == std::string::npos)
    return t;
  t.erase(0, nl + 1);
  const auto close = t.rfind("```");
  if (close != std::string::npos)
    t.erase(close);
  return trim(t);
}

// Rejects pathological nesting before handing text to the recursive parser.
bool nesting_ok(std::string_view text) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (char c : text) {
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"')
      in_string = true;
    else if (c == '{' || c == '[') {
      if (++depth > kMaxDepth)
        return false;
    } else if (c == '}' || c == ']')
      --depth;
  }
  return true;
}

json parse_object(std::string_view raw) {
  const std::string body = unfence(raw);
  if (body.empty())
    fail("empty response", raw);
  if (!nesting_ok(body))
    fail("response nests too deeply", raw);
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded())
    fail("response is not valid JSON", raw);
  if (!j.is_object())
    fail("response is not a JSON object", raw);
  return j;
}

std::vector<std::string> string_list(const json &j, const char *key,
                                     std::string_view raw, bool required,
                                     std::vector<std::string> &warnings,
                                     const std::string &where) {
  std::vector<std::string> out;
  if (!j.contains(key)) {
    if (required)
      fail(where + " lacks '" + key + "'", raw);
    return out;
  }
  const auto &arr = j.at(key);
  if (!arr.is_array())
    fail(where + " '" + key + "' is not an array", raw);
  std::set<std::string> seen;
  for (const auto &item : arr) {
    if (!item.is_string())
      fail(where + " '" + key + "' holds a non-string", raw);
    std::string s = trim(item.get<std::string>());
    if (s.empty())
      continue;
    if (!seen.insert(s).second) {
      warnings.push_back(where + ": dropped duplicate '" + s + "'");
      continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

const json &array_field(const json &j, const char *key, std::string_view raw,
                        const std::string &where) {
  if (!j.is_object())
    fail(where + " is not an object", raw);
  if (!j.contains(key))
    fail(where + " lacks '" + key + "'", raw);
  const auto &arr = j.at(key);
  if (!arr.is_array())
    fail(where + " '" + key + "' is not an array", raw);
  return arr;
}

std::string name_field(const json &j, const char *key, std::string_view raw,
                       const std::string &where) {
  if (!j.contains(key) || !j.at(key).is_string())
    fail(where + " lacks string '" + key + "'", raw);
  return trim(j.at(key).get<std::string>());
}

ElementNode parse_element(const json &j, std::string_view raw,
                          const std::string &where,
                          std::vector<std::string> &warnings) {
  if (!j.is_object())
    fail(where + " is not an object", raw);
  ElementNode e;
  e.category = name_field(j, "category", raw, where);
  e.sub_elements = string_list(j, "sub_elements", raw, true, warnings,
                               where + " '" + e.category + "'");
  return e;
}

template <typename Node>
void dedupe(std::vector<Node> &nodes, std::string (*name)(const Node &),
            const std::string &where, std::vector<std::string> &warnings) {
  std::set<std::string> seen;
  std::vector<Node> kept;
  for (auto &n : nodes) {
    if (!seen.insert(name(n)).second) {
      warnings.push_back(where + ": dropped duplicate '" + name(n) + "'");
      continue;
    }
    kept.push_back(std::move(n));
  }
  nodes = std::move(kept);
}

std::string element_name(const ElementNode &e) { return e.category; }
std::string sub_style_name(const SubStyleNode &s) { return s.name; }
std::string style_name(const StyleNode &s) { return s.name; }

void require_structure(const StyleHierarchy &h) {
  const auto problems = structural_problems(h);
  if (problems.empty())
    return;
  std::string msg = "generated hierarchy is malformed:";
  for (const auto &p : problems)
    msg += "\n  " + p;
  throw StructuralError(msg);
}

} // namespace

Parsed<KeywordLists> parse_keyword_response(std::string_view raw) {
  const json j = parse_object(raw);
  Parsed<KeywordLists> out;
  if (!j.contains("styles") && !j.contains("moods"))
    fail("keyword response lacks 'styles' and 'moods'", raw);
  out.value.styles =
      string_list(j, "styles", raw, false, out.warnings, "styles");
  out.value.moods = string_list(j, "moods", raw, false, out.warnings, "moods");
  if (out.value.empty())
    fail("keyword response names no style or mood", raw);
  return out;
}

Parsed<StyleHierarchy> parse_hierarchy_response(std::string_view raw) {
  const json j = parse_object(raw);
  Parsed<StyleHierarchy> out;
  auto &h = out.value;
  for (const auto &js : array_field(j, "styles", raw, "response")) {
    StyleNode style;
    if (!js.is_object())
      fail("style entry is not an object", raw);
    style.name = name_field(js, "name", raw, "style");
    const std::string sat = "style '" + style.name + "'";
    style.moods = string_list(js, "moods", raw, false, out.warnings,
                              sat + " moods");
    for (const auto &jsub : array_field(js, "sub_styles", raw, sat)) {
      SubStyleNode sub;
      if (!jsub.is_object())
        fail(sat + " sub-style entry is not an object", raw);
      sub.name = name_field(jsub, "name", raw, sat + " sub-style");
      const std::string subat = sat + " / sub-style '" + sub.name + "'";
      for (const auto &jel : array_field(jsub, "elements", raw, subat))
        sub.elements.push_back(
            parse_element(jel, raw, subat + " element", out.warnings));
      dedupe(sub.elements, element_name, subat, out.warnings);
      style.sub_styles.push_back(std::move(sub));
    }
    dedupe(style.sub_styles, sub_style_name, sat, out.warnings);
    h.styles.push_back(std::move(style));
  }
  dedupe(h.styles, style_name, "hierarchy", out.warnings);
  require_structure(h);
  return out;
}

Parsed<ElementSuggestions> parse_caption_response(std::string_view raw) {
  const json j = parse_object(raw);
  Parsed<ElementSuggestions> out;
  for (const auto &jel : array_field(j, "elements", raw, "response")) {
    const ElementNode e = parse_element(jel, raw, "element", out.warnings);
    out.value.elements.push_back({e.category, e.sub_elements});
  }
  std::set<std::string> seen;
  std::vector<ElementSuggestion> kept;
  for (auto &e : out.value.elements) {
    if (e.category.empty())
      throw StructuralError("caption names an element with an empty category");
    if (e.sub_elements.empty())
      throw StructuralError("caption element '" + e.category +
                            "' has no sub-elements");
    if (!seen.insert(e.category).second) {
      out.warnings.push_back("caption: dropped duplicate '" + e.category + "'");
      continue;
    }
    kept.push_back(std::move(e));
  }
  out.value.elements = std::move(kept);
  if (out.value.elements.empty())
    throw StructuralError("caption names no fashion elements");
  return out;
}

} // namespace clay
