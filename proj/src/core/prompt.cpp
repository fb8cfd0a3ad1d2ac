#include "clay/core/prompt.hpp"

#include "clay/common/error.hpp"

#include <sstream>

namespace clay {

using nlohmann::json;

std::string_view to_string(KeywordOrigin o) noexcept {
  return o == KeywordOrigin::HierarchySuggested ? "hierarchy_suggested"
                                                : "user_originated";
}

std::optional<KeywordOrigin> parse_origin(std::string_view s) noexcept {
  if (s == "hierarchy_suggested")
    return KeywordOrigin::HierarchySuggested;
  if (s == "user_originated")
    return KeywordOrigin::UserOriginated;
  return std::nullopt;
}

Keyword Keyword::suggested(std::string text, HierarchyPath path) {
  return Keyword{std::move(text), KeywordOrigin::HierarchySuggested,
                 std::move(path)};
}

Keyword Keyword::user(std::string text) {
  return Keyword{std::move(text), KeywordOrigin::UserOriginated, std::nullopt};
}

double specificity_score(const std::vector<Keyword> &keywords,
                         const std::optional<std::string> &free_text) {
  double score = 0.0;
  for (const auto &k : keywords) {
    if (k.origin == KeywordOrigin::UserOriginated || !k.path)
      score += 3.0;
    else
      score += static_cast<double>(k.path->depth());
  }
  if (free_text) {
    std::istringstream in(*free_text);
    std::string token;
    while (in >> token)
      score += 0.5;
  }
  return score;
}

std::string prompt_text(const RefinedPrompt &p) {
  std::string out;
  for (const auto &k : p.keywords) {
    if (!out.empty())
      out += ", ";
    out += k.text;
  }
  if (p.free_text && !p.free_text->empty()) {
    if (!out.empty())
      out += ", ";
    out += *p.free_text;
  }
  return out;
}

json to_json(const Keyword &k) {
  json j{{"text", k.text}, {"origin", to_string(k.origin)}};
  if (k.path)
    j["path"] = k.path->indices;
  return j;
}

Keyword keyword_from_json(const json &j) {
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string() ||
      !j.contains("origin") || !j["origin"].is_string())
    throw validation_error("keyword must be {text, origin[, path]}");
  const auto origin = parse_origin(j["origin"].get<std::string>());
  if (!origin)
    throw validation_error("unknown keyword origin");
  Keyword k{j["text"].get<std::string>(), *origin, std::nullopt};
  if (j.contains("path")) {
    if (!j["path"].is_array())
      throw validation_error("keyword path must be an array");
    HierarchyPath path;
    for (const auto &i : j["path"]) {
      if (!i.is_number_unsigned())
        throw validation_error("keyword path entries must be non-negative");
      path.indices.push_back(i.get<std::size_t>());
    }
    k.path = std::move(path);
  }
  if (k.path.has_value() != (k.origin == KeywordOrigin::HierarchySuggested))
    throw validation_error("keyword path must be present iff suggested");
  return k;
}

json to_json(const RefinedPrompt &p) {
  json keywords = json::array();
  for (const auto &k : p.keywords)
    keywords.push_back(to_json(k));
  json j{{"keywords", std::move(keywords)},
         {"specificity", p.specificity},
         {"revision", p.revision}};
  j["free_text"] = p.free_text ? json(*p.free_text) : json(nullptr);
  return j;
}

RefinedPrompt prompt_from_json(const json &j) {
  if (!j.is_object() || !j.contains("keywords") || !j["keywords"].is_array() ||
      !j.contains("revision") || !j["revision"].is_number_integer())
    throw validation_error("prompt must be {keywords, free_text, revision}");
  RefinedPrompt p;
  for (const auto &k : j["keywords"])
    p.keywords.push_back(keyword_from_json(k));
  if (j.contains("free_text") && j["free_text"].is_string())
    p.free_text = j["free_text"].get<std::string>();
  p.revision = j["revision"].get<int>();
  p.specificity = specificity_score(p);
  return p;
}

} // namespace clay
