#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "clay/common/error.hpp"
#include "clay/core/hierarchy.hpp"
#include "clay/core/ports.hpp"

namespace clay {

template <typename T> struct Parsed {
  T value;
  std::vector<std::string> warnings; // e.g. dropped duplicates
};

// Well-formed JSON of the right shape whose content breaks a structural rule
// (empty sub-element list, empty name). Not retry-advised.
class StructuralError : public Error {
public:
  explicit StructuralError(const std::string &message);
};

// All three accept the JSON object optionally wrapped in a ``` fence and
// surrounded by whitespace. Malformed text throws ParseError carrying the
// raw text. Names are trimmed; sibling duplicates keep the first.
Parsed<KeywordLists> parse_keyword_response(std::string_view raw);
Parsed<StyleHierarchy> parse_hierarchy_response(std::string_view raw);
Parsed<ElementSuggestions> parse_caption_response(std::string_view raw);

} // namespace clay
