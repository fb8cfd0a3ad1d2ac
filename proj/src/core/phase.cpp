#include "clay/core/phase.hpp"

namespace clay {

std::string_view to_string(SessionMode m) noexcept {
  return m == SessionMode::Clay ? "clay" : "baseline";
}

std::string_view to_string(Stage s) noexcept {
  return s == Stage::Moodboard ? "moodboard" : "design";
}

std::string_view to_string(Phase p) noexcept {
  switch (p) {
  case Phase::VaguePrompt:
    return "vague_prompt";
  case Phase::HierarchicalResults:
    return "hierarchical_results";
  case Phase::PromptRefinement:
    return "prompt_refinement";
  case Phase::CombinationResults:
    return "combination_results";
  }
  return "vague_prompt";
}

std::optional<SessionMode> parse_mode(std::string_view s) noexcept {
  if (s == "clay")
    return SessionMode::Clay;
  if (s == "baseline")
    return SessionMode::Baseline;
  return std::nullopt;
}

std::optional<Stage> parse_stage(std::string_view s) noexcept {
  if (s == "moodboard")
    return Stage::Moodboard;
  if (s == "design")
    return Stage::Design;
  return std::nullopt;
}

std::optional<Phase> parse_phase(std::string_view s) noexcept {
  for (auto p : {Phase::VaguePrompt, Phase::HierarchicalResults,
                 Phase::PromptRefinement, Phase::CombinationResults})
    if (to_string(p) == s)
      return p;
  return std::nullopt;
}

bool is_permitted_transition(SessionMode mode, Phase from, Phase to) noexcept {
  using P = Phase;
  if (mode == SessionMode::Baseline)
    return (from == P::VaguePrompt && to == P::CombinationResults) ||
           (from == P::CombinationResults && to == P::VaguePrompt);
  switch (from) {
  case P::VaguePrompt:
    return to == P::HierarchicalResults;
  case P::HierarchicalResults:
    return to == P::PromptRefinement;
  case P::PromptRefinement:
    return to == P::CombinationResults || to == P::VaguePrompt;
  case P::CombinationResults:
    return to == P::PromptRefinement;
  }
  return false;
}

} // namespace clay
