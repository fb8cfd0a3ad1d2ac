#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clay/core/config.hpp"
#include "clay/core/phase.hpp"
#include "clay/core/prompt.hpp"
#include "json.hpp"

namespace clay {

enum class ArtifactKind { MoodboardImage, DesignImageSet, BaselineImage };

std::string_view to_string(ArtifactKind k) noexcept;
std::optional<ArtifactKind> parse_artifact_kind(std::string_view s) noexcept;

// `count` is the moodboard tile count or the design variant count, depending
// on the stage the params belong to.
struct CompositionParams {
  int count = 1;
  double fashion_ratio = 0.5; // garment-on-model tiles vs object/texture tiles

  bool operator==(const CompositionParams &) const = default;
};

CompositionParams default_composition(Stage stage, const CompositionConfig &cfg);

enum class CompositionDirective {
  ReduceTileCount,
  IncreaseTileCount,
  IncreaseFashionRatio,
  DecreaseFashionRatio,
};

std::string_view to_string(CompositionDirective d) noexcept;
std::optional<CompositionDirective>
parse_directive(std::string_view s) noexcept;

struct DirectiveOutcome {
  CompositionParams params;
  bool clamped = false; // requested change hit a bound
};

DirectiveOutcome apply_directive(const CompositionParams &current,
                                 CompositionDirective directive,
                                 const CompositionConfig &cfg);

using PromptSnapshot = std::variant<RefinedPrompt, std::string>;

struct GenerationArtifact {
  std::string id;
  ArtifactKind kind = ArtifactKind::MoodboardImage;
  Stage stage = Stage::Moodboard;
  PromptSnapshot prompt_snapshot;
  CompositionParams composition;
  std::vector<std::string> image_refs; // content digests, never empty
  std::string backend_id;
  std::uint64_t seed_used = 0;

  bool operator==(const GenerationArtifact &) const = default;
};

// Prompt text as sent to image synthesis.
std::string snapshot_text(const PromptSnapshot &snapshot);

nlohmann::json to_json(const GenerationArtifact &a);
GenerationArtifact artifact_from_json(const nlohmann::json &j);

} // namespace clay
