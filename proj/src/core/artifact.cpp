#include "clay/core/artifact.hpp"

#include "clay/common/error.hpp"

#include <algorithm>

namespace clay {

using nlohmann::json;

std::string_view to_string(ArtifactKind k) noexcept {
  switch (k) {
  case ArtifactKind::MoodboardImage:
    return "moodboard_image";
  case ArtifactKind::DesignImageSet:
    return "design_image_set";
  case ArtifactKind::BaselineImage:
    return "baseline_image";
  }
  return "moodboard_image";
}

std::optional<ArtifactKind> parse_artifact_kind(std::string_view s) noexcept {
  for (auto k : {ArtifactKind::MoodboardImage, ArtifactKind::DesignImageSet,
                 ArtifactKind::BaselineImage})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

CompositionParams default_composition(Stage stage,
                                      const CompositionConfig &cfg) {
  return CompositionParams{stage == Stage::Moodboard ? cfg.moodboard_tiles
                                                     : cfg.design_variants,
                           cfg.fashion_ratio};
}

std::string_view to_string(CompositionDirective d) noexcept {
  switch (d) {
  case CompositionDirective::ReduceTileCount:
    return "reduce_tile_count";
  case CompositionDirective::IncreaseTileCount:
    return "increase_tile_count";
  case CompositionDirective::IncreaseFashionRatio:
    return "increase_fashion_ratio";
  case CompositionDirective::DecreaseFashionRatio:
    return "decrease_fashion_ratio";
  }
  return "reduce_tile_count";
}

std::optional<CompositionDirective>
parse_directive(std::string_view s) noexcept {
  for (auto d : {CompositionDirective::ReduceTileCount,
                 CompositionDirective::IncreaseTileCount,
                 CompositionDirective::IncreaseFashionRatio,
                 CompositionDirective::DecreaseFashionRatio})
    if (to_string(d) == s)
      return d;
  return std::nullopt;
}

DirectiveOutcome apply_directive(const CompositionParams &current,
                                 CompositionDirective directive,
                                 const CompositionConfig &cfg) {
  DirectiveOutcome out{current, false};
  auto &p = out.params;
  switch (directive) {
  case CompositionDirective::ReduceTileCount:
    p.count = current.count - cfg.count_step;
    break;
  case CompositionDirective::IncreaseTileCount:
    p.count = current.count + cfg.count_step;
    break;
  case CompositionDirective::IncreaseFashionRatio:
    p.fashion_ratio = current.fashion_ratio + cfg.ratio_step;
    break;
  case CompositionDirective::DecreaseFashionRatio:
    p.fashion_ratio = current.fashion_ratio - cfg.ratio_step;
    break;
  }
  const int count = std::clamp(p.count, 1, cfg.max_count);
  const double ratio = std::clamp(p.fashion_ratio, 0.0, 1.0);
  out.clamped = count != p.count || ratio != p.fashion_ratio;
  p.count = count;
  p.fashion_ratio = ratio;
  return out;
}

std::string snapshot_text(const PromptSnapshot &snapshot) {
  if (const auto *p = std::get_if<RefinedPrompt>(&snapshot))
    return prompt_text(*p);
  return std::get<std::string>(snapshot);
}

json to_json(const GenerationArtifact &a) {
  json j{{"id", a.id},
         {"kind", to_string(a.kind)},
         {"stage", to_string(a.stage)},
         {"composition",
          {{"count", a.composition.count},
           {"fashion_ratio", a.composition.fashion_ratio}}},
         {"image_refs", a.image_refs},
         {"backend_id", a.backend_id},
         {"seed_used", a.seed_used}};
  if (const auto *p = std::get_if<RefinedPrompt>(&a.prompt_snapshot))
    j["prompt"] = to_json(*p);
  else
    j["prompt_text"] = std::get<std::string>(a.prompt_snapshot);
  return j;
}

GenerationArtifact artifact_from_json(const json &j) {
  try {
    GenerationArtifact a;
    a.id = j.at("id").get<std::string>();
    const auto kind = parse_artifact_kind(j.at("kind").get<std::string>());
    const auto stage = parse_stage(j.at("stage").get<std::string>());
    if (!kind || !stage)
      throw validation_error("artifact has unknown kind or stage");
    a.kind = *kind;
    a.stage = *stage;
    a.composition.count = j.at("composition").at("count").get<int>();
    a.composition.fashion_ratio =
        j.at("composition").at("fashion_ratio").get<double>();
    a.image_refs = j.at("image_refs").get<std::vector<std::string>>();
    a.backend_id = j.at("backend_id").get<std::string>();
    a.seed_used = j.at("seed_used").get<std::uint64_t>();
    if (j.contains("prompt"))
      a.prompt_snapshot = prompt_from_json(j["prompt"]);
    else
      a.prompt_snapshot = j.at("prompt_text").get<std::string>();
    if (a.image_refs.empty())
      throw validation_error("artifact has no image refs");
    return a;
  } catch (const json::exception &e) {
    throw validation_error(std::string("malformed artifact: ") + e.what());
  }
}

} // namespace clay
