#include "clay/core/hierarchy.hpp"

#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"

#include <charconv>
#include <set>

namespace clay {

using nlohmann::json;

std::string HierarchyPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i)
      out += '/';
    out += std::to_string(indices[i]);
  }
  return out;
}

std::optional<HierarchyPath> HierarchyPath::parse(std::string_view text) {
  HierarchyPath path;
  while (!text.empty()) {
    const auto slash = text.find('/');
    const auto part = text.substr(0, slash);
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      return std::nullopt;
    path.indices.push_back(value);
    if (slash == std::string_view::npos)
      break;
    text.remove_prefix(slash + 1);
    if (text.empty())
      return std::nullopt;
  }
  if (path.indices.empty() || path.indices.size() > 4)
    return std::nullopt;
  return path;
}

namespace {

template <typename Range, typename NameOf>
void check_siblings(const Range &items, NameOf name_of,
                    const std::string &where, std::vector<std::string> &out) {
  std::set<std::string> seen;
  for (const auto &item : items) {
    const std::string &name = name_of(item);
    if (name.empty())
      out.push_back(where + ": empty name");
    else if (!seen.insert(name).second)
      out.push_back(where + ": duplicate name '" + name + "'");
  }
}

template <typename Vec, typename NameOf>
std::vector<std::string> dedupe(Vec &items, NameOf name_of,
                                const std::string &where) {
  std::vector<std::string> warnings;
  std::set<std::string> seen;
  Vec kept;
  for (auto &item : items) {
    if (seen.insert(name_of(item)).second)
      kept.push_back(std::move(item));
    else
      warnings.push_back(where + ": dropped duplicate '" + name_of(item) +
                         "'");
  }
  items = std::move(kept);
  return warnings;
}

const std::string &identity(const std::string &s) { return s; }

std::vector<std::string> string_list(const json &j, const char *what) {
  if (!j.is_array())
    throw validation_error(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto &item : j) {
    if (!item.is_string())
      throw validation_error(std::string(what) + " entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

const json &field(const json &obj, const char *key) {
  if (!obj.is_object())
    throw validation_error(std::string("expected object holding '") + key +
                           "'");
  const auto it = obj.find(key);
  if (it == obj.end())
    throw validation_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json &obj, const char *key) {
  const auto &v = field(obj, key);
  if (!v.is_string())
    throw validation_error(std::string("field '") + key +
                           "' must be a string");
  return v.get<std::string>();
}

} // namespace

std::vector<std::string> structural_problems(const StyleHierarchy &h) {
  std::vector<std::string> out;
  if (h.styles.empty())
    out.push_back("hierarchy has no styles");
  check_siblings(h.styles, [](const StyleNode &s) -> const std::string & {
    return s.name;
  }, "styles", out);
  for (const auto &style : h.styles) {
    const std::string at = "style '" + style.name + "'";
    if (style.sub_styles.empty())
      out.push_back(at + " has no sub-styles");
    check_siblings(style.sub_styles,
                   [](const SubStyleNode &s) -> const std::string & {
                     return s.name;
                   },
                   at, out);
    for (const auto &sub : style.sub_styles) {
      const std::string sat = at + " / sub-style '" + sub.name + "'";
      if (sub.elements.empty())
        out.push_back(sat + " has no elements");
      check_siblings(sub.elements,
                     [](const ElementNode &e) -> const std::string & {
                       return e.category;
                     },
                     sat, out);
      for (const auto &el : sub.elements) {
        const std::string eat = sat + " / element '" + el.category + "'";
        if (el.sub_elements.empty())
          out.push_back(eat + " has no sub-elements");
        check_siblings(el.sub_elements, identity, eat, out);
      }
    }
  }
  return out;
}

void require_well_formed(const StyleHierarchy &h) {
  const auto problems = structural_problems(h);
  if (problems.empty())
    return;
  std::string msg = "malformed hierarchy:";
  for (const auto &p : problems)
    msg += "\n  " + p;
  throw validation_error(msg);
}

std::optional<std::string> node_text(const StyleHierarchy &h,
                                     const HierarchyPath &path) {
  const auto &ix = path.indices;
  if (ix.empty() || ix.size() > 4 || ix[0] >= h.styles.size())
    return std::nullopt;
  const auto &style = h.styles[ix[0]];
  if (ix.size() == 1)
    return style.name;
  if (ix[1] >= style.sub_styles.size())
    return std::nullopt;
  const auto &sub = style.sub_styles[ix[1]];
  if (ix.size() == 2)
    return sub.name;
  if (ix[2] >= sub.elements.size())
    return std::nullopt;
  const auto &el = sub.elements[ix[2]];
  if (ix.size() == 3)
    return el.category;
  if (ix[3] >= el.sub_elements.size())
    return std::nullopt;
  return el.sub_elements[ix[3]];
}

std::optional<HierarchyPath> find_text(const StyleHierarchy &h,
                                       std::string_view text) {
  for (std::size_t s = 0; s < h.styles.size(); ++s) {
    const auto &style = h.styles[s];
    if (style.name == text)
      return HierarchyPath{{s}};
    for (std::size_t ss = 0; ss < style.sub_styles.size(); ++ss) {
      const auto &sub = style.sub_styles[ss];
      if (sub.name == text)
        return HierarchyPath{{s, ss}};
      for (std::size_t e = 0; e < sub.elements.size(); ++e) {
        const auto &el = sub.elements[e];
        if (el.category == text)
          return HierarchyPath{{s, ss, e}};
        for (std::size_t k = 0; k < el.sub_elements.size(); ++k)
          if (el.sub_elements[k] == text)
            return HierarchyPath{{s, ss, e, k}};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> dedupe_siblings(StyleHierarchy &h) {
  auto warnings = dedupe(h.styles, [](const StyleNode &s) { return s.name; },
                         "styles");
  for (auto &style : h.styles) {
    auto w = dedupe(style.sub_styles,
                    [](const SubStyleNode &s) { return s.name; },
                    "style '" + style.name + "'");
    warnings.insert(warnings.end(), w.begin(), w.end());
    for (auto &sub : style.sub_styles) {
      w = dedupe(sub.elements, [](const ElementNode &e) { return e.category; },
                 "sub-style '" + sub.name + "'");
      warnings.insert(warnings.end(), w.begin(), w.end());
      for (auto &el : sub.elements) {
        w = dedupe(el.sub_elements, [](const std::string &s) { return s; },
                   "element '" + el.category + "'");
        warnings.insert(warnings.end(), w.begin(), w.end());
      }
    }
  }
  return warnings;
}

json to_json(const StyleHierarchy &h) {
  json styles = json::array();
  for (const auto &style : h.styles) {
    json subs = json::array();
    for (const auto &sub : style.sub_styles) {
      json elements = json::array();
      for (const auto &el : sub.elements)
        elements.push_back(
            {{"category", el.category}, {"sub_elements", el.sub_elements}});
      subs.push_back({{"name", sub.name}, {"elements", std::move(elements)}});
    }
    styles.push_back({{"name", style.name},
                      {"moods", style.moods},
                      {"sub_styles", std::move(subs)}});
  }
  return json{{"styles", std::move(styles)}};
}

StyleHierarchy hierarchy_from_json(const json &j) {
  StyleHierarchy h;
  const auto &styles = field(j, "styles");
  if (!styles.is_array())
    throw validation_error("'styles' must be an array");
  for (const auto &js : styles) {
    StyleNode style;
    style.name = string_field(js, "name");
    if (js.contains("moods"))
      style.moods = string_list(js["moods"], "moods");
    const auto &subs = field(js, "sub_styles");
    if (!subs.is_array())
      throw validation_error("'sub_styles' must be an array");
    for (const auto &jss : subs) {
      SubStyleNode sub;
      sub.name = string_field(jss, "name");
      const auto &els = field(jss, "elements");
      if (!els.is_array())
        throw validation_error("'elements' must be an array");
      for (const auto &je : els) {
        ElementNode el;
        el.category = string_field(je, "category");
        el.sub_elements = string_list(field(je, "sub_elements"), "sub_elements");
        sub.elements.push_back(std::move(el));
      }
      style.sub_styles.push_back(std::move(sub));
    }
    h.styles.push_back(std::move(style));
  }
  return h;
}

std::string canonical_json(const StyleHierarchy &h) { return to_json(h).dump(); }

std::string hierarchy_digest(const StyleHierarchy &h) {
  return sha256_hex(canonical_json(h));
}

} // namespace clay
