#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clay/common/timestamp.hpp"
#include "clay/core/config.hpp"
#include "clay/core/ports.hpp"
#include "clay/core/session.hpp"

namespace clay {

// Result of submit_vague_prompt: a hierarchy in Clay mode, an image in
// Baseline mode.
struct VagueResult {
  std::optional<StyleHierarchy> hierarchy;
  std::optional<GenerationArtifact> artifact;
};

struct CompositionResult {
  GenerationArtifact artifact;
  bool clamped = false;
};

// The vagueness-balancing state machine. Stateless apart from its backends
// and configuration; every operation takes the session it acts on. Callers
// must serialize operations on one session; distinct sessions are
// independent.
//
// Each operation either fails without touching the session or appends its
// events and folds them in through apply_event().
class WorkflowEngine {
public:
  WorkflowEngine(BackendSet backends, WorkflowConfig config,
                 Clock clock = system_now);

  const WorkflowConfig &config() const noexcept { return config_; }
  const BackendSet &backends() const noexcept { return backends_; }

  // `id` defaults to one derived from the other arguments.
  Session create_session(SessionMode mode, std::string_view style_seed,
                         std::uint64_t rng_seed, std::string id = {}) const;

  VagueResult submit_vague_prompt(Session &s, std::string_view text) const;

  // Appends a HierarchyViewed event. Clay only.
  const StyleHierarchy &view_hierarchy(Session &s) const;

  // Adds hierarchy-suggested and user-originated keywords to the draft and
  // returns the whole draft. Duplicates (exact text) keep the first.
  std::vector<Keyword> select_keywords(Session &s,
                                       std::span<const HierarchyPath> paths,
                                       std::span<const std::string> new_keywords)
      const;

  RefinedPrompt refine_prompt(Session &s, std::vector<Keyword> keywords,
                              std::optional<std::string> free_text) const;

  GenerationArtifact generate_combination(Session &s) const;

  CompositionResult modify_composition(Session &s,
                                       CompositionDirective directive) const;

  // Moodboard -> Design. In Clay mode the selected moodboard is captioned
  // and its suggestions become the design-stage hierarchy; that image query
  // is recorded as the design stage's vague prompt.
  void advance_stage(Session &s, std::string_view moodboard_id) const;

  // Explicit move along the phase graph. Leaving PromptRefinement for
  // VaguePrompt discards the hierarchy and keyword draft. Not logged: the
  // event vocabulary has no phase-only entry, so sessions that must be
  // restorable from their log move phases only through the operations above.
  void advance_phase(Session &s, Phase to) const;

private:
  Timestamp stamp(const Session &s) const;
  void commit(Session &s, EventKind kind, nlohmann::json payload) const;
  GenerationArtifact synthesize(const Session &s, ArtifactKind kind,
                                PromptSnapshot snapshot,
                                CompositionParams composition) const;

  BackendSet backends_;
  WorkflowConfig config_;
  Clock clock_;
};

// Text sent to image synthesis for a Clay-mode combination.
std::string image_prompt(Stage stage, const RefinedPrompt &prompt,
                         const CompositionParams &composition);

} // namespace clay
