#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clay/core/hierarchy.hpp"
#include "json.hpp"

namespace clay {

enum class KeywordOrigin { HierarchySuggested, UserOriginated };

std::string_view to_string(KeywordOrigin o) noexcept;
std::optional<KeywordOrigin> parse_origin(std::string_view s) noexcept;

// `path` is set iff origin == HierarchySuggested.
struct Keyword {
  std::string text;
  KeywordOrigin origin = KeywordOrigin::UserOriginated;
  std::optional<HierarchyPath> path;

  static Keyword suggested(std::string text, HierarchyPath path);
  static Keyword user(std::string text);

  bool operator==(const Keyword &) const = default;
};

struct RefinedPrompt {
  std::vector<Keyword> keywords;
  std::optional<std::string> free_text;
  double specificity = 0.0;
  int revision = 1;

  bool operator==(const RefinedPrompt &) const = default;
};

// Diagnostic only; nothing is gated on it. Per keyword: style 1, sub-style 2,
// element 3, sub-element 4, user-originated 3; plus 0.5 per free-text token.
double specificity_score(const std::vector<Keyword> &keywords,
                         const std::optional<std::string> &free_text);
inline double specificity_score(const RefinedPrompt &p) {
  return specificity_score(p.keywords, p.free_text);
}

// Text handed to image synthesis: keywords joined by ", ", then free text.
std::string prompt_text(const RefinedPrompt &p);

nlohmann::json to_json(const Keyword &k);
Keyword keyword_from_json(const nlohmann::json &j);
nlohmann::json to_json(const RefinedPrompt &p);
RefinedPrompt prompt_from_json(const nlohmann::json &j);

} // namespace clay
