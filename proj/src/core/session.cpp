#include "clay/core/session.hpp"

#include "clay/common/error.hpp"

#include <algorithm>

namespace clay {

using nlohmann::json;

const GenerationArtifact *
Session::find_artifact(std::string_view artifact_id) const {
  for (const auto &a : artifacts)
    if (a.id == artifact_id)
      return &a;
  return nullptr;
}

int Session::interaction_count() const noexcept {
  return clay::interaction_count(events);
}

Session initial_session(std::string id, SessionMode mode,
                        std::string style_seed, std::uint64_t rng_seed,
                        Timestamp created_at,
                        CompositionParams moodboard_composition) {
  Session s;
  s.id = std::move(id);
  s.mode = mode;
  s.style_seed = std::move(style_seed);
  s.rng_seed = rng_seed;
  s.created_at = created_at;
  s.composition = moodboard_composition;
  s.phase_history.push_back({Stage::Moodboard, Phase::VaguePrompt});
  return s;
}

void transition(Session &s, Phase to) {
  if (!is_permitted_transition(s.mode, s.phase, to))
    throw illegal_transition_error(
        "illegal transition " + std::string(to_string(s.phase)) + " -> " +
        std::string(to_string(to)) + " in " + std::string(to_string(s.mode)) +
        " mode");
  s.phase = to;
  s.phase_history.push_back({s.stage, to});
}

namespace {

void require(bool ok, const std::string &what) {
  if (!ok)
    throw validation_error("event does not apply: " + what);
}

const json &member(const json &payload, const char *key) {
  const auto it = payload.find(key);
  require(it != payload.end(), std::string("payload lacks '") + key + "'");
  return *it;
}

void discard_draft(Session &s) {
  s.hierarchy.reset();
  s.current_prompt.reset();
  s.keyword_draft.clear();
}

void apply_vague_prompt(Session &s, const json &p) {
  if (s.mode == SessionMode::Baseline) {
    auto artifact = artifact_from_json(member(p, "artifact"));
    require(artifact.kind == ArtifactKind::BaselineImage,
            "baseline prompt must yield a baseline image");
    require(s.phase == Phase::VaguePrompt ||
                s.phase == Phase::CombinationResults,
            "baseline prompt in phase " + std::string(to_string(s.phase)));
    require(!s.find_artifact(artifact.id), "duplicate artifact id");
    if (s.phase == Phase::CombinationResults)
      transition(s, Phase::VaguePrompt);
    s.artifacts.push_back(std::move(artifact));
    transition(s, Phase::CombinationResults);
    return;
  }
  auto hierarchy = hierarchy_from_json(member(p, "hierarchy"));
  require_well_formed(hierarchy);
  require(s.phase == Phase::VaguePrompt || s.phase == Phase::PromptRefinement,
          "vague prompt in phase " + std::string(to_string(s.phase)));
  if (s.phase == Phase::PromptRefinement)
    transition(s, Phase::VaguePrompt);
  discard_draft(s);
  s.hierarchy = std::move(hierarchy);
  transition(s, Phase::HierarchicalResults);
}

void apply_keyword_selected(Session &s, const json &p) {
  require(s.mode == SessionMode::Clay, "keyword selection in baseline mode");
  auto keyword = keyword_from_json(member(p, "keyword"));
  if (keyword.path) {
    require(s.hierarchy.has_value(), "suggested keyword without hierarchy");
    const auto text = node_text(*s.hierarchy, *keyword.path);
    require(text && *text == keyword.text,
            "keyword path does not resolve to its text");
  }
  const bool present =
      std::any_of(s.keyword_draft.begin(), s.keyword_draft.end(),
                  [&](const Keyword &k) { return k.text == keyword.text; });
  if (!present)
    s.keyword_draft.push_back(std::move(keyword));
}

void apply_prompt_refined(Session &s, const json &p) {
  require(s.mode == SessionMode::Clay, "prompt refinement in baseline mode");
  auto prompt = prompt_from_json(member(p, "prompt"));
  require(!prompt.keywords.empty(), "refined prompt has no keywords");
  require(prompt.revision == s.last_revision + 1,
          "revision must increment by one");
  for (const auto &k : prompt.keywords) {
    if (!k.path)
      continue;
    require(s.hierarchy.has_value(), "suggested keyword without hierarchy");
    const auto text = node_text(*s.hierarchy, *k.path);
    require(text && *text == k.text, "keyword path does not resolve");
  }
  if (s.phase != Phase::PromptRefinement)
    transition(s, Phase::PromptRefinement);
  s.last_revision = prompt.revision;
  s.keyword_draft = prompt.keywords;
  s.current_prompt = std::move(prompt);
}

void apply_generation(Session &s, const json &p) {
  auto artifact = artifact_from_json(member(p, "artifact"));
  require(s.mode == SessionMode::Clay, "combination generation in baseline");
  require(artifact.stage == s.stage, "artifact stage differs from session");
  require(!s.find_artifact(artifact.id), "duplicate artifact id");
  transition(s, Phase::CombinationResults);
  s.artifacts.push_back(std::move(artifact));
}

void apply_composition(Session &s, const json &p) {
  auto artifact = artifact_from_json(member(p, "artifact"));
  const auto &c = member(p, "composition");
  require(s.mode == SessionMode::Clay, "composition directive in baseline");
  require(s.phase == Phase::CombinationResults,
          "composition directive outside combination results");
  require(!s.find_artifact(artifact.id), "duplicate artifact id");
  require(c.is_object() && c.contains("count") && c.contains("fashion_ratio"),
          "malformed composition");
  s.composition = {c["count"].get<int>(), c["fashion_ratio"].get<double>()};
  s.artifacts.push_back(std::move(artifact));
}

void apply_stage_advanced(Session &s, const json &p) {
  const auto &source = member(p, "source_artifact");
  const auto &c = member(p, "composition");
  require(source.is_string(), "source_artifact must be a string");
  require(s.stage == Stage::Moodboard, "stage already advanced");
  require(s.find_artifact(source.get<std::string>()) != nullptr,
          "dangling source artifact");
  require(c.is_object() && c.contains("count") && c.contains("fashion_ratio"),
          "malformed composition");
  s.stage = Stage::Design;
  s.source_moodboard = source.get<std::string>();
  discard_draft(s);
  s.composition = {c["count"].get<int>(), c["fashion_ratio"].get<double>()};
  s.phase = Phase::VaguePrompt;
  s.phase_history.push_back({Stage::Design, Phase::VaguePrompt});
}

} // namespace

void apply_event(Session &s, const InteractionEvent &e) {
  require(e.session_id == s.id, "event belongs to another session");
  require(s.events.empty() || s.events.back().timestamp <= e.timestamp,
          "timestamps must be non-decreasing");
  require(e.counts_as_interaction == counts_as_interaction(e.kind),
          "interaction flag disagrees with kind");
  try {
    switch (e.kind) {
    case EventKind::VaguePromptSubmitted:
      apply_vague_prompt(s, e.payload);
      break;
    case EventKind::HierarchyViewed:
      require(s.mode == SessionMode::Clay && s.hierarchy.has_value(),
              "hierarchy viewed without a hierarchy");
      break;
    case EventKind::KeywordSelected:
      apply_keyword_selected(s, e.payload);
      break;
    case EventKind::PromptRefined:
      apply_prompt_refined(s, e.payload);
      break;
    case EventKind::GenerationRequested:
      apply_generation(s, e.payload);
      break;
    case EventKind::CompositionDirective:
      apply_composition(s, e.payload);
      break;
    case EventKind::StageAdvanced:
      apply_stage_advanced(s, e.payload);
      break;
    }
  } catch (const json::exception &ex) {
    throw validation_error(std::string("event does not apply: ") + ex.what());
  } catch (const Error &ex) {
    if (ex.code() == ErrorCode::illegal_transition)
      throw validation_error(std::string("event does not apply: ") +
                             ex.what());
    throw;
  }
  s.events.push_back(e);
}

json session_summary(const Session &s) {
  json artifacts = json::array();
  for (const auto &a : s.artifacts)
    artifacts.push_back(to_json(a));
  json draft = json::array();
  for (const auto &k : s.keyword_draft)
    draft.push_back(to_json(k));
  json j{{"id", s.id},
         {"mode", to_string(s.mode)},
         {"stage", to_string(s.stage)},
         {"phase", to_string(s.phase)},
         {"style_seed", s.style_seed},
         {"seed", s.rng_seed},
         {"hierarchy_available", s.hierarchy.has_value()},
         {"keyword_draft", std::move(draft)},
         {"revision", s.last_revision},
         {"composition",
          {{"count", s.composition.count},
           {"fashion_ratio", s.composition.fashion_ratio}}},
         {"artifacts", std::move(artifacts)},
         {"interaction_count", s.interaction_count()},
         {"event_count", s.events.size()}};
  j["current_prompt"] =
      s.current_prompt ? to_json(*s.current_prompt) : json(nullptr);
  j["source_moodboard"] =
      s.source_moodboard ? json(*s.source_moodboard) : json(nullptr);
  return j;
}

} // namespace clay
