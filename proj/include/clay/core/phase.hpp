#pragma once

#include <optional>
#include <string_view>

namespace clay {

enum class SessionMode { Clay, Baseline };
enum class Stage { Moodboard, Design };

// The four phases of one vagueness-balancing pass. Serialized names are
// stable and appear in logs and API bodies.
enum class Phase {
  VaguePrompt,
  HierarchicalResults,
  PromptRefinement,
  CombinationResults,
};

std::string_view to_string(SessionMode m) noexcept;
std::string_view to_string(Stage s) noexcept;
std::string_view to_string(Phase p) noexcept;

std::optional<SessionMode> parse_mode(std::string_view s) noexcept;
std::optional<Stage> parse_stage(std::string_view s) noexcept;
std::optional<Phase> parse_phase(std::string_view s) noexcept;

// Permitted edges of the phase graph.
//
//   Clay:      VaguePrompt -> HierarchicalResults -> PromptRefinement
//              PromptRefinement -> CombinationResults -> PromptRefinement
//              PromptRefinement -> VaguePrompt          (restart, new query)
//   Baseline:  VaguePrompt -> CombinationResults -> VaguePrompt
bool is_permitted_transition(SessionMode mode, Phase from, Phase to) noexcept;

} // namespace clay
