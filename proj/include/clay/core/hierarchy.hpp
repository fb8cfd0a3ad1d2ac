#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace clay {

// Four levels: style -> sub-style -> fashion element -> sub-element.
struct ElementNode {
  std::string category; // color, fabric, silhouette, detail, ...
  std::vector<std::string> sub_elements;

  bool operator==(const ElementNode &) const = default;
};

struct SubStyleNode {
  std::string name;
  std::vector<ElementNode> elements;

  bool operator==(const SubStyleNode &) const = default;
};

struct StyleNode {
  std::string name;
  std::vector<std::string> moods;
  std::vector<SubStyleNode> sub_styles;

  bool operator==(const StyleNode &) const = default;
};

struct StyleHierarchy {
  std::vector<StyleNode> styles;

  bool operator==(const StyleHierarchy &) const = default;
};

// Index path into a hierarchy; 1 index addresses a style, 4 a sub-element.
struct HierarchyPath {
  std::vector<std::size_t> indices;

  std::size_t depth() const noexcept { return indices.size(); }
  std::string to_string() const; // "0/2/1/0"
  static std::optional<HierarchyPath> parse(std::string_view text);

  bool operator==(const HierarchyPath &) const = default;
};

// Empty when the hierarchy satisfies every structural rule: at least one
// style, every style has sub-styles, every sub-style elements, every element
// sub-elements; names non-empty and unique among siblings.
std::vector<std::string> structural_problems(const StyleHierarchy &h);

// Throws a validation Error listing the problems.
void require_well_formed(const StyleHierarchy &h);

// Text of the node the path addresses, or nullopt when it does not resolve.
std::optional<std::string> node_text(const StyleHierarchy &h,
                                     const HierarchyPath &path);

// First node (pre-order) whose text equals `text` exactly.
std::optional<HierarchyPath> find_text(const StyleHierarchy &h,
                                       std::string_view text);

// Drops later siblings whose name duplicates an earlier one, recursively.
// Returns one warning per dropped node.
std::vector<std::string> dedupe_siblings(StyleHierarchy &h);

nlohmann::json to_json(const StyleHierarchy &h);
// Strict shape check; throws a validation Error on mismatch. Does not run
// structural checks.
StyleHierarchy hierarchy_from_json(const nlohmann::json &j);

std::string canonical_json(const StyleHierarchy &h);
std::string hierarchy_digest(const StyleHierarchy &h);

} // namespace clay
