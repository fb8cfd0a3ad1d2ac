#include "clay/backends/prompts.hpp"

#include "clay/common/error.hpp"

#include <string>

#include "json.hpp"

namespace clay::data {
std::string_view extraction_exemplars_json();
}

namespace clay {

using nlohmann::json;

std::string_view to_string(ChatTask task) noexcept {
  switch (task) {
  case ChatTask::KeywordExtraction:
    return "keyword_extraction";
  case ChatTask::HierarchyGeneration:
    return "hierarchy_generation";
  case ChatTask::Captioning:
    return "captioning";
  }
  return "unknown";
}

namespace {

const char *kKeywordSchema =
    R"({"styles": [string, ...], "moods": [string, ...]})";

const char *kHierarchySchema =
    R"({"styles": [{"name": string, "moods": [string, ...], "sub_styles": )"
    R"([{"name": string, "elements": [{"category": string, )"
    R"("sub_elements": [string, ...]}, ...]}, ...]}, ...]})";

const char *kCaptionSchema =
    R"({"elements": [{"category": string, "sub_elements": [string, ...]}, ...]})";

std::string join(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &s : items) {
    if (!out.empty())
      out += ", ";
    out += s;
  }
  return out.empty() ? "(none)" : out;
}

std::vector<Exemplar> load_exemplars() {
  const json doc = json::parse(data::extraction_exemplars_json());
  std::vector<Exemplar> out;
  for (const auto &e : doc.at("exemplars"))
    out.push_back({e.at("input").get<std::string>(), e.at("output").dump()});
  return out;
}

} // namespace

const std::vector<Exemplar> &extraction_exemplars() {
  static const std::vector<Exemplar> exemplars = load_exemplars();
  return exemplars;
}

ChatRequest build_extraction_request(std::string_view free_text) {
  if (free_text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw validation_error("vague prompt text must be non-empty");
  ChatRequest r;
  r.task = ChatTask::KeywordExtraction;
  r.instruction =
      "You help fashion designers. Extract the fashion style keywords and the "
      "mood keywords mentioned or implied by the designer's request. Keep "
      "each keyword short. Answer with JSON only.";
  r.exemplars = extraction_exemplars();
  r.user_content = std::string(free_text);
  r.response_schema_hint = kKeywordSchema;
  return r;
}

ChatRequest build_hierarchy_request(const KeywordLists &keywords,
                                    const HierarchyCardinality &cardinality) {
  if (keywords.empty())
    throw validation_error("hierarchy request needs at least one style or mood");
  ChatRequest r;
  r.task = ChatTask::HierarchyGeneration;
  r.instruction =
      "You help fashion designers explore a direction. For the styles [" +
      join(keywords.styles) + "] and the moods [" + join(keywords.moods) +
      "], build a four-level hierarchy: style -> sub-style -> fashion element "
      "-> sub-element. Give each style " +
      std::to_string(cardinality.sub_styles_per_style) +
      " sub-styles; each sub-style " +
      std::to_string(cardinality.elements_per_sub_style) +
      " fashion element categories (such as color, fabric, silhouette, "
      "detail); each element " +
      std::to_string(cardinality.sub_elements_per_element) +
      " concrete sub-elements. Sibling names must be distinct. Answer with "
      "JSON only.";
  r.user_content =
      json{{"styles", keywords.styles},
           {"moods", keywords.moods},
           {"cardinality",
            {{"sub_styles_per_style", cardinality.sub_styles_per_style},
             {"elements_per_sub_style", cardinality.elements_per_sub_style},
             {"sub_elements_per_element",
              cardinality.sub_elements_per_element}}}}
          .dump();
  r.response_schema_hint = kHierarchySchema;
  return r;
}

ChatRequest build_caption_request(const MoodboardSource &moodboard) {
  ChatRequest r;
  r.task = ChatTask::Captioning;
  r.instruction =
      "You help fashion designers turn a moodboard into a design. Describe "
      "the fashion elements visible in the moodboard that could be used in a "
      "garment design, grouped by category (color, fabric, silhouette, "
      "detail, ...), each with concrete sub-elements. Answer with JSON only.";
  r.user_content = json{{"moodboard", moodboard.artifact_id},
                        {"style", moodboard.style_seed},
                        {"prompt", moodboard.prompt_text},
                        {"keywords", moodboard.keywords}}
                       .dump();
  r.response_schema_hint = kCaptionSchema;
  return r;
}

MoodboardSource moodboard_source(const Session &s,
                                 std::string_view artifact_id) {
  const auto *a = s.find_artifact(artifact_id);
  if (!a)
    throw validation_error("no artifact '" + std::string(artifact_id) +
                           "' in session " + s.id);
  if (a->kind != ArtifactKind::MoodboardImage)
    throw validation_error("artifact '" + a->id + "' is a " +
                           std::string(to_string(a->kind)) +
                           ", not a moodboard");
  MoodboardSource src;
  src.artifact_id = a->id;
  src.image_ref = a->image_refs.front();
  src.prompt_text = snapshot_text(a->prompt_snapshot);
  if (const auto *p = std::get_if<RefinedPrompt>(&a->prompt_snapshot))
    for (const auto &k : p->keywords)
      src.keywords.push_back(k.text);
  src.style_seed = s.style_seed;
  return src;
}

} // namespace clay
