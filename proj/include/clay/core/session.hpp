#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clay/core/artifact.hpp"
#include "clay/core/event.hpp"
#include "clay/core/hierarchy.hpp"
#include "clay/core/phase.hpp"
#include "clay/core/prompt.hpp"

namespace clay {

struct PhaseStep {
  Stage stage;
  Phase phase;

  bool operator==(const PhaseStep &) const = default;
};

// One designer's run through the moodboard and design stages.
//
// All state changes go through apply_event(), so a session is exactly the
// fold of its event log over the initial state.
struct Session {
  std::string id;
  SessionMode mode = SessionMode::Clay;
  Stage stage = Stage::Moodboard;
  std::optional<std::string> source_moodboard; // set once in Design
  Phase phase = Phase::VaguePrompt;
  std::string style_seed;
  std::uint64_t rng_seed = 0;
  Timestamp created_at{};

  std::optional<StyleHierarchy> hierarchy; // never set in Baseline
  std::optional<RefinedPrompt> current_prompt;
  std::vector<Keyword> keyword_draft;
  CompositionParams composition;
  int last_revision = 0;

  std::vector<GenerationArtifact> artifacts;
  std::vector<InteractionEvent> events;
  std::vector<PhaseStep> phase_history; // every phase entered, in order

  const GenerationArtifact *find_artifact(std::string_view artifact_id) const;
  int interaction_count() const noexcept;
};

Session initial_session(std::string id, SessionMode mode,
                        std::string style_seed, std::uint64_t rng_seed,
                        Timestamp created_at,
                        CompositionParams moodboard_composition);

// Moves `s` to phase `to`, recording the step. Throws illegal_transition
// naming both phases when the edge is not permitted for the session's mode.
void transition(Session &s, Phase to);

// Folds one event into the session. Throws a validation Error when the event
// is inconsistent with the current state; the session is left untouched in
// that case.
void apply_event(Session &s, const InteractionEvent &e);

// Summary for API responses.
nlohmann::json session_summary(const Session &s);

} // namespace clay
